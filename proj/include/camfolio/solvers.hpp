#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "camfolio/rng.hpp"
#include "camfolio/selection.hpp"

namespace camfolio {

struct GAParams {
    int population_size = 60;
    int max_generations = 150;
    double crossover_rate = 0.9;
    double mutation_rate = -1.0; // < 0 means "use 1/N"
    int elitism_count = 2;
};

inline GAParams default_ga_params(std::size_t n_cameras) {
    GAParams p;
    p.mutation_rate = 1.0 / static_cast<double>(n_cameras);
    return p;
}

struct SolveResult {
    SelectionVector selection;
    FitnessValue fitness_value;
    double expected_quality = 0.0;
    double objective_risk = 0.0;
    int generations_used = 0;
    std::string method;
};

namespace detail {

inline SolveResult make_result(const Scenario& s, const Matrix& cov, const SelectionVector& sel,
                               int generations, std::string method) {
    SolveResult r;
    r.selection = sel;
    r.fitness_value = fitness(s, sel, cov);
    r.expected_quality = expected_quality(s, sel);
    r.objective_risk = objective_risk(sel, cov);
    r.generations_used = generations;
    r.method = std::move(method);
    return r;
}

// Uniform random subset of exactly k cameras (partial Fisher-Yates).
inline SelectionVector random_subset(std::size_t n, int k, rng_engine& eng) {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    SelectionVector sel(n);
    for (int i = 0; i < k; ++i) {
        const std::size_t j = i + uniform_index(eng, n - i);
        std::swap(idx[i], idx[j]);
        sel.set(idx[i]);
    }
    return sel;
}

inline void deactivate_random(SelectionVector& sel, rng_engine& eng) {
    std::vector<int> active = sel.indices();
    sel.set(active[uniform_index(eng, active.size())], false);
}

inline void activate_random(SelectionVector& sel, rng_engine& eng) {
    std::vector<int> inactive;
    for (std::size_t i = 0; i < sel.size(); ++i)
        if (!sel.test(i)) inactive.push_back(static_cast<int>(i));
    sel.set(inactive[uniform_index(eng, inactive.size())]);
}

// GA-internal repair: adjust the number of active cameras to match psi,
// deactivating or activating uniformly random bits as needed.
inline void repair_to_budget(SelectionVector& sel, int psi, rng_engine& eng) {
    while (sel.popcount() > psi) deactivate_random(sel, eng);
    while (sel.popcount() < psi) activate_random(sel, eng);
}

} // namespace detail

// Budget repair: deactivate uniformly random active cameras until the count
// is back to psi. Selections already at or under budget pass unchanged (the
// budget constraint is <=).
inline SelectionVector enforce_psi(SelectionVector sel, int psi, rng_engine& eng) {
    if (psi < 0) throw invalid_parameter("enforce_psi: psi must be >= 0");
    while (sel.popcount() > psi) detail::deactivate_random(sel, eng);
    return sel;
}

// Exhaustive search over all subsets of size exactly k, enumerated in
// lexicographic index order with strict improvement, so ties resolve to the
// lowest camera indices. k is the budget for this solve and overrides the
// scenario's stored psi. Guarded for small N only.
inline SolveResult exact_solver(const Scenario& s_in, int k) {
    const std::size_t n = s_in.size();
    if (n > 25)
        throw capacity_error("exact_solver: N = " + std::to_string(n) + " exceeds the N <= 25 enumeration guard");
    if (k < 1 || k > static_cast<int>(n))
        throw invalid_input("exact_solver: k must be in [1, N], got " + std::to_string(k));
    Scenario s = s_in;
    s.psi = k;

    const Matrix cov = covariance_matrix(s);
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);

    SelectionVector best;
    FitnessValue best_fit;
    bool have = false;
    for (;;) {
        SelectionVector sel = SelectionVector::from_indices(n, idx);
        const FitnessValue f = fitness(s, sel, cov);
        if (!have || f < best_fit) {
            best = sel;
            best_fit = f;
            have = true;
        }
        // next combination
        int i = k - 1;
        while (i >= 0 && idx[i] == static_cast<int>(n) - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return detail::make_result(s, cov, best, 0, "exact");
}

// Convenience extension (not part of the k-out-of-N framing): best result
// over all budgets k = 1..psi.
inline SolveResult exact_solver_up_to(const Scenario& s, int psi) {
    if (psi < 1 || psi > static_cast<int>(s.size()))
        throw invalid_input("exact_solver_up_to: psi must be in [1, N]");
    SolveResult best;
    bool have = false;
    for (int k = 1; k <= psi; ++k) {
        SolveResult r = exact_solver(s, k);
        if (!have || r.fitness_value < best.fitness_value ||
            (r.fitness_value == best.fitness_value && lex_before(r.selection, best.selection))) {
            best = std::move(r);
            have = true;
        }
    }
    best.method = "exact_up_to";
    return best;
}

// Baseline: the k highest-resolution cameras, ties to the lower index.
inline SelectionVector traditional_select(const Scenario& s, int k) {
    const std::size_t n = s.size();
    if (k < 1 || k > static_cast<int>(n))
        throw invalid_input("traditional_select: k must be in [1, N], got " + std::to_string(k));
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return s.cameras[a].resolution() > s.cameras[b].resolution();
    });
    idx.resize(k);
    return SelectionVector::from_indices(n, idx);
}

inline void validate_ga_params(const GAParams& p) {
    if (p.population_size < 2) throw invalid_parameter("ga: population_size must be >= 2");
    if (p.max_generations < 1) throw invalid_parameter("ga: max_generations must be >= 1");
    if (!(p.crossover_rate >= 0.0 && p.crossover_rate <= 1.0))
        throw invalid_parameter("ga: crossover_rate must be in [0,1]");
    if (!(p.mutation_rate >= 0.0 && p.mutation_rate <= 1.0))
        throw invalid_parameter("ga: mutation_rate must be in [0,1]");
    if (p.elitism_count < 0 || p.elitism_count >= p.population_size)
        throw invalid_parameter("ga: elitism_count must be in [0, population_size)");
}

// Genetic solver. Individuals live on the exactly-psi budget boundary:
// initialization draws uniform subsets of size psi and every offspring is
// repaired back to psi active cameras. Tournament selection of size 2,
// single-point crossover, per-bit mutation, elitism. All randomness comes
// from one sequential generator derived from (seed), so results are
// identical for identical (scenario, params, seed).
inline SolveResult ga_solve(const Scenario& s, GAParams params, std::uint64_t seed) {
    validate_scenario(s);
    const std::size_t n = s.size();
    if (params.mutation_rate < 0.0) params.mutation_rate = 1.0 / static_cast<double>(n);
    validate_ga_params(params);
    const int ps = params.population_size;
    const int psi = s.psi;
    const Matrix cov = covariance_matrix(s);

    rng_engine eng = make_engine(derive_seed(seed, {stream::ga}));

    std::vector<SelectionVector> pop;
    pop.reserve(ps);
    for (int i = 0; i < ps; ++i) pop.push_back(detail::random_subset(n, psi, eng));

    std::vector<FitnessValue> fit(ps);
    auto evaluate = [&](const std::vector<SelectionVector>& p) {
        for (int i = 0; i < ps; ++i) fit[i] = fitness(s, p[i], cov);
    };

    SelectionVector best;
    FitnessValue best_fit;
    bool have_best = false;
    auto track_best = [&]() {
        for (int i = 0; i < ps; ++i) {
            if (!have_best || fit[i] < best_fit) {
                best = pop[i];
                best_fit = fit[i];
                have_best = true;
            }
        }
    };

    evaluate(pop);
    track_best();

    std::vector<int> order(ps);
    auto tournament = [&]() -> const SelectionVector& {
        const std::size_t a = uniform_index(eng, ps);
        const std::size_t b = uniform_index(eng, ps);
        return fit[b] < fit[a] ? pop[b] : pop[a];
    };
    auto mutate_and_repair = [&](SelectionVector& child) {
        for (std::size_t i = 0; i < n; ++i)
            if (uniform01(eng) < params.mutation_rate) child.set(i, !child.test(i));
        detail::repair_to_budget(child, psi, eng);
    };

    for (int gen = 1; gen <= params.max_generations; ++gen) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return fit[a] < fit[b]; });

        std::vector<SelectionVector> next;
        next.reserve(ps);
        for (int e = 0; e < params.elitism_count; ++e) next.push_back(pop[order[e]]);

        while (static_cast<int>(next.size()) < ps) {
            SelectionVector c1 = tournament();
            SelectionVector c2 = tournament();
            if (uniform01(eng) < params.crossover_rate && n > 1) {
                const std::size_t cut = 1 + uniform_index(eng, n - 1);
                for (std::size_t i = cut; i < n; ++i) {
                    const bool t = c1.test(i);
                    c1.set(i, c2.test(i));
                    c2.set(i, t);
                }
            }
            mutate_and_repair(c1);
            next.push_back(std::move(c1));
            if (static_cast<int>(next.size()) < ps) {
                mutate_and_repair(c2);
                next.push_back(std::move(c2));
            }
        }

        pop = std::move(next);
        evaluate(pop);
        track_best();
    }

    SolveResult r = detail::make_result(s, cov, best, params.max_generations, "ga");
    return r;
}

inline SolveResult ga_solve(const Scenario& s, std::uint64_t seed) {
    return ga_solve(s, default_ga_params(s.size()), seed);
}

} // namespace camfolio
