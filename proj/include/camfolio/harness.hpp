#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "camfolio/quality.hpp"
#include "camfolio/scenario.hpp"
#include "camfolio/simulate.hpp"
#include "camfolio/solvers.hpp"

namespace camfolio {

enum class Strategy { Portfolio, Traditional, AllCameras };

inline const char* strategy_label(Strategy s) {
    switch (s) {
        case Strategy::Portfolio: return "portfolio";
        case Strategy::Traditional: return "traditional";
        case Strategy::AllCameras: return "all_cameras";
    }
    return "?";
}

inline Strategy strategy_from_label(const std::string& name) {
    if (name == "portfolio") return Strategy::Portfolio;
    if (name == "traditional") return Strategy::Traditional;
    if (name == "all_cameras") return Strategy::AllCameras;
    throw invalid_input("unknown strategy '" + name + "' (portfolio|traditional|all_cameras)");
}

struct MetricsReport {
    Strategy strategy = Strategy::Portfolio;
    SelectionVector selection;
    int trials = 0;
    double mean_quality = 0.0;
    double sd_quality = 0.0;       // sample SD (T-1 divisor); 0 when T < 2
    int over_threshold_count = 0;  // trials with quality >= threshold
    std::vector<double> per_trial;
};

struct EvalOptions {
    int trials = 0; // <= 0: use scenario.trials
    std::uint64_t seed = 0;
    double quality_threshold = 0.0; // in the quality model's own unit
    bool freeze_outcomes = false;
    int threads = 1;
};

inline MetricsReport summarize_trials(std::vector<double> per_trial, double threshold) {
    MetricsReport r;
    r.trials = static_cast<int>(per_trial.size());
    double acc = 0.0;
    for (double q : per_trial) acc += q;
    r.mean_quality = acc / static_cast<double>(r.trials);
    if (r.trials > 1) {
        double ss = 0.0;
        for (double q : per_trial) ss += (q - r.mean_quality) * (q - r.mean_quality);
        r.sd_quality = std::sqrt(ss / static_cast<double>(r.trials - 1));
    }
    for (double q : per_trial)
        if (q >= threshold) ++r.over_threshold_count;
    r.per_trial = std::move(per_trial);
    return r;
}

// Picks the strategy's selection, simulates opt.trials disrupted captures,
// and reduces them to summary metrics. All strategies evaluated with the
// same seed see the same disruption draws (the selection only filters which
// cameras matter), so cross-strategy comparisons are paired.
inline MetricsReport evaluate_strategy(const Scenario& s, Strategy strategy, const QualityModel& model,
                                       const GAParams& params, const EvalOptions& opt) {
    validate_scenario(s);
    SelectionVector sel;
    switch (strategy) {
        case Strategy::Portfolio: sel = ga_solve(s, params, opt.seed).selection; break;
        case Strategy::Traditional: sel = traditional_select(s, s.psi); break;
        case Strategy::AllCameras: sel = SelectionVector(s.size(), true); break;
    }

    TrialOptions topt;
    topt.trials = opt.trials > 0 ? opt.trials : s.trials;
    topt.seed = opt.seed;
    topt.freeze_outcomes = opt.freeze_outcomes;
    topt.threads = opt.threads;
    std::vector<double> q = run_trials(s, sel, topt, [&](std::uint32_t alive) {
        return model.delivered(alive, s);
    });

    MetricsReport r = summarize_trials(std::move(q), opt.quality_threshold);
    r.strategy = strategy;
    r.selection = sel;
    return r;
}

enum class RhoScope { HighResBlock, AllOffDiagonal };

// Cameras at the scenario's maximum resolution.
inline std::vector<int> highres_cameras(const Scenario& s) {
    double rmax = 0.0;
    for (const auto& c : s.cameras) rmax = std::max(rmax, c.resolution());
    std::vector<int> out;
    for (const auto& c : s.cameras)
        if (c.resolution() == rmax) out.push_back(c.id);
    return out;
}

// Replaces either the off-diagonal block among high-resolution cameras or
// every off-diagonal entry with r.
inline CorrelationMatrix apply_rho_override(const Scenario& s, double r, RhoScope scope) {
    if (!(r >= -1.0 && r <= 1.0))
        throw invalid_parameter("rho override out of [-1,1]: " + std::to_string(r));
    CorrelationMatrix rho = s.rho;
    if (scope == RhoScope::AllOffDiagonal) {
        for (std::size_t i = 0; i < rho.size(); ++i)
            for (std::size_t j = i + 1; j < rho.size(); ++j) rho.set(i, j, r);
        return rho;
    }
    const std::vector<int> hi = highres_cameras(s);
    for (std::size_t a = 0; a < hi.size(); ++a)
        for (std::size_t b = a + 1; b < hi.size(); ++b) rho.set(hi[a], hi[b], r);
    return rho;
}

// Override + PSD repair, returning a scenario ready for both the optimizer
// and the simulator. Repaired entries are clamped against 1-ulp overshoot.
inline Scenario scenario_with_rho(const Scenario& s, double r, RhoScope scope) {
    Scenario out = s;
    const CorrelationMatrix overridden = apply_rho_override(s, r, scope);
    const CopulaFactor f = prepare_copula(overridden);
    if (f.repair_delta == 0.0) {
        out.rho = overridden;
        return out;
    }
    Matrix m = f.repaired_rho;
    for (double& v : m.a) v = std::clamp(v, -1.0, 1.0);
    out.rho = CorrelationMatrix(m);
    return out;
}

struct SweepPoint {
    double axis_value = 0.0;
    Strategy strategy = Strategy::Portfolio;
    MetricsReport report;
};

struct SweepResult {
    std::string axis; // "psi" or "rho"
    std::vector<SweepPoint> points;
};

// Evaluates every (psi value, strategy) pair. Each axis value gets an
// independent seed derived from (opt.seed, axis index); strategies at the
// same axis value share it, so cross-strategy comparisons stay paired.
inline SweepResult sweep_psi(const Scenario& s, const std::vector<int>& psi_values,
                             const std::vector<Strategy>& strategies, const QualityModel& model,
                             const GAParams& params, const EvalOptions& opt) {
    SweepResult out;
    out.axis = "psi";
    for (std::size_t vi = 0; vi < psi_values.size(); ++vi) {
        Scenario sc = s;
        sc.psi = psi_values[vi];
        validate_scenario(sc);
        for (std::size_t si = 0; si < strategies.size(); ++si) {
            EvalOptions o = opt;
            o.seed = derive_seed(opt.seed, {stream::sweep, vi});
            SweepPoint p;
            p.axis_value = static_cast<double>(psi_values[vi]);
            p.strategy = strategies[si];
            p.report = evaluate_strategy(sc, strategies[si], model, params, o);
            out.points.push_back(std::move(p));
        }
    }
    return out;
}

// Evaluates every (rho value, strategy) pair after overriding the
// correlation block and repairing PSD. Seeds follow the sweep_psi scheme.
inline SweepResult sweep_rho(const Scenario& s, const std::vector<double>& rho_values,
                             const std::vector<Strategy>& strategies, const QualityModel& model,
                             const GAParams& params, const EvalOptions& opt,
                             RhoScope scope = RhoScope::HighResBlock) {
    SweepResult out;
    out.axis = "rho";
    for (std::size_t vi = 0; vi < rho_values.size(); ++vi) {
        const Scenario sc = scenario_with_rho(s, rho_values[vi], scope);
        for (std::size_t si = 0; si < strategies.size(); ++si) {
            EvalOptions o = opt;
            o.seed = derive_seed(opt.seed, {stream::sweep, vi});
            SweepPoint p;
            p.axis_value = rho_values[vi];
            p.strategy = strategies[si];
            p.report = evaluate_strategy(sc, strategies[si], model, params, o);
            out.points.push_back(std::move(p));
        }
    }
    return out;
}

} // namespace camfolio
