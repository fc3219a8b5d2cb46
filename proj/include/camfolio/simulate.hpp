#pragma once

#include <cstdint>
#include <vector>

#include "camfolio/copula.hpp"
#include "camfolio/distributions.hpp"
#include "camfolio/parallel.hpp"
#include "camfolio/rng.hpp"
#include "camfolio/scenario.hpp"
#include "camfolio/selection.hpp"

namespace camfolio {

// One disruption realization: the availability probabilities drawn from the
// copula, and the per-camera up/down outcomes drawn from them.
struct TrialDraw {
    std::vector<double> probabilities; // each in (0,1)
    std::vector<std::uint8_t> up;      // 1 = camera survived this trial
};

// Draws correlated availability probabilities: z = L g with g iid standard
// normal, u_i = Phi(z_i), p_i = BetaQuantile(u_i; a_i, b_i). Marginals are
// exactly Beta(a_i, b_i); the Gaussian copula transfers rank dependence, so
// the realized Pearson correlation of the p's sits somewhat below the
// requested normal-space rho (attenuation is measured in the tests, not
// corrected for).
inline std::vector<double> sample_probabilities(const Scenario& s, const CopulaFactor& factor,
                                                rng_engine& eng) {
    const std::size_t n = s.size();
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = std_normal(eng);
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) {
        double z = 0.0;
        for (std::size_t j = 0; j <= i; ++j) z += factor.L.at(i, j) * g[j];
        const double u = normal_cdf(z);
        p[i] = beta_quantile(u, s.cameras[i].beta_a, s.cameras[i].beta_b);
    }
    return p;
}

// Bernoulli outcomes, conditionally independent given the probabilities.
inline std::vector<std::uint8_t> sample_outcomes(const std::vector<double>& probs, rng_engine& eng) {
    std::vector<std::uint8_t> up(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const double pi = probs[i];
        if (!(pi >= 0.0 && pi <= 1.0))
            throw invalid_parameter("sample_outcomes: probability out of [0,1]");
        up[i] = uniform01(eng) < pi ? 1 : 0;
    }
    return up;
}

struct TrialOptions {
    int trials = 20;
    std::uint64_t seed = 0;
    bool freeze_outcomes = false; // up iff p >= 0.5 instead of Bernoulli sampling
    int threads = 1;
};

inline TrialDraw draw_trial(const Scenario& s, const CopulaFactor& factor, std::uint64_t seed,
                            std::uint64_t t, bool freeze_outcomes) {
    rng_engine eng = make_engine(derive_seed(seed, {stream::trials, t}));
    TrialDraw d;
    d.probabilities = sample_probabilities(s, factor, eng);
    if (freeze_outcomes) {
        d.up.resize(d.probabilities.size());
        for (std::size_t i = 0; i < d.up.size(); ++i) d.up[i] = d.probabilities[i] >= 0.5 ? 1 : 0;
    } else {
        d.up = sample_outcomes(d.probabilities, eng);
    }
    return d;
}

// Runs T independent trials and hands each realized alive-subset of the
// selection to `quality` (signature: double(uint32_t alive_mask)). Trial t
// draws from a generator derived from (seed, t), so any prefix of a longer
// run is bitwise-identical and trials can be evaluated on any thread count.
template <typename QualityFn>
std::vector<double> run_trials(const Scenario& s, const SelectionVector& selection,
                               const TrialOptions& opt, QualityFn&& quality) {
    check_selection_size(selection, s.size(), "run_trials");
    if (opt.trials <= 0) throw invalid_parameter("run_trials: trials must be positive");
    const CopulaFactor factor = prepare_copula(s.rho);
    const std::uint32_t sel_mask = selection.to_mask();

    std::vector<double> out(opt.trials);
    parallel_for(static_cast<std::size_t>(opt.trials), opt.threads, [&](std::size_t t) {
        const TrialDraw d = draw_trial(s, factor, opt.seed, t, opt.freeze_outcomes);
        std::uint32_t up_mask = 0;
        for (std::size_t i = 0; i < d.up.size(); ++i)
            if (d.up[i]) up_mask |= (1u << i);
        out[t] = quality(sel_mask & up_mask);
    });
    return out;
}

} // namespace camfolio
