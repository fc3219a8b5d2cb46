#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "camfolio/matrix.hpp"
#include "camfolio/scenario.hpp"

namespace camfolio {

// Binary camera selection, one flag per camera.
struct SelectionVector {
    std::vector<std::uint8_t> bits;

    SelectionVector() = default;
    explicit SelectionVector(std::size_t n, bool on = false) : bits(n, on ? 1 : 0) {}

    std::size_t size() const { return bits.size(); }
    bool test(std::size_t i) const { return bits[i] != 0; }
    void set(std::size_t i, bool on = true) { bits[i] = on ? 1 : 0; }

    int popcount() const {
        int c = 0;
        for (auto b : bits) c += b;
        return c;
    }

    std::uint32_t to_mask() const {
        std::uint32_t m = 0;
        for (std::size_t i = 0; i < bits.size(); ++i)
            if (bits[i]) m |= (1u << i);
        return m;
    }

    static SelectionVector from_mask(std::size_t n, std::uint32_t mask) {
        SelectionVector s(n);
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) s.bits[i] = 1;
        return s;
    }

    static SelectionVector from_indices(std::size_t n, const std::vector<int>& idx) {
        SelectionVector s(n);
        for (int i : idx) s.bits[static_cast<std::size_t>(i)] = 1;
        return s;
    }

    std::vector<int> indices() const {
        std::vector<int> out;
        for (std::size_t i = 0; i < bits.size(); ++i)
            if (bits[i]) out.push_back(static_cast<int>(i));
        return out;
    }

    // "1;3;5" with 1-based camera ids, "-" when empty.
    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (!bits[i]) continue;
            if (!out.empty()) out += ';';
            out += std::to_string(i + 1);
        }
        return out.empty() ? "-" : out;
    }

    friend bool operator==(const SelectionVector&, const SelectionVector&) = default;
};

// Compares selections as sorted index lists, so {0,3} orders before {1,2}.
// Used for deterministic tie-breaking (lowest camera indices win).
inline bool lex_before(const SelectionVector& a, const SelectionVector& b) {
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (a.bits[i] != b.bits[i]) return a.bits[i] > b.bits[i];
    }
    return false;
}

// Fitness as a class-ordered value instead of the classic infinity/penalty
// scalar: every budget violation orders worse than every quality deficit,
// which orders worse than every feasible risk. Magnitudes only compare
// within a class (cameras over budget / pixels short of theta / pixels^2).
enum class FitnessClass : int { Risk = 0, QualityDeficit = 1, InfeasibleBudget = 2 };

struct FitnessValue {
    FitnessClass cls = FitnessClass::Risk;
    double magnitude = 0.0;

    friend bool operator==(const FitnessValue& a, const FitnessValue& b) {
        return a.cls == b.cls && a.magnitude == b.magnitude;
    }
    friend bool operator<(const FitnessValue& a, const FitnessValue& b) {
        if (a.cls != b.cls) return static_cast<int>(a.cls) < static_cast<int>(b.cls);
        return a.magnitude < b.magnitude;
    }
    friend bool operator<=(const FitnessValue& a, const FitnessValue& b) { return a < b || a == b; }
    friend bool operator>(const FitnessValue& a, const FitnessValue& b) { return b < a; }
};

inline const char* fitness_class_name(FitnessClass c) {
    switch (c) {
        case FitnessClass::Risk: return "risk";
        case FitnessClass::QualityDeficit: return "quality_deficit";
        case FitnessClass::InfeasibleBudget: return "infeasible_budget";
    }
    return "?";
}

inline void check_selection_size(const SelectionVector& alpha, std::size_t n, const char* op) {
    if (alpha.size() != n)
        throw invalid_input(std::string(op) + ": selection has " + std::to_string(alpha.size()) +
                            " entries for " + std::to_string(n) + " cameras");
}

// Sum of R_i * E[p_i] over the selected cameras.
inline double expected_quality(const Scenario& s, const SelectionVector& alpha) {
    check_selection_size(alpha, s.size(), "expected_quality");
    double q = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (alpha.test(i)) q += expected_resolution(s.cameras[i]);
    return q;
}

// Portfolio variance: the full symmetric double sum over the covariance
// matrix. Plain row-major accumulation; kept loop-for-loop identical to the
// obvious reference implementation so results match it bitwise.
inline double objective_risk(const SelectionVector& alpha, const Matrix& cov) {
    check_selection_size(alpha, cov.n, "objective_risk");
    double acc = 0.0;
    for (std::size_t i = 0; i < cov.n; ++i) {
        if (!alpha.test(i)) continue;
        for (std::size_t j = 0; j < cov.n; ++j) {
            if (!alpha.test(j)) continue;
            acc += cov.at(i, j);
        }
    }
    return acc;
}

inline double objective_risk(const Scenario& s, const SelectionVector& alpha) {
    return objective_risk(alpha, covariance_matrix(s));
}

// Three-way classification per the selection objective: budget first,
// expected-quality floor second, variance last. A selection meeting theta
// exactly is feasible (the deficit branch is strict).
inline FitnessValue fitness(const Scenario& s, const SelectionVector& alpha, const Matrix& cov) {
    check_selection_size(alpha, s.size(), "fitness");
    const int over = alpha.popcount() - s.psi;
    if (over > 0) return {FitnessClass::InfeasibleBudget, static_cast<double>(over)};
    const double q = expected_quality(s, alpha);
    if (q < s.theta) return {FitnessClass::QualityDeficit, s.theta - q};
    return {FitnessClass::Risk, objective_risk(alpha, cov)};
}

inline FitnessValue fitness(const Scenario& s, const SelectionVector& alpha) {
    return fitness(s, alpha, covariance_matrix(s));
}

} // namespace camfolio
