#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "camfolio/config.hpp"
#include "camfolio/format.hpp"
#include "camfolio/copula.hpp"
#include "camfolio/harness.hpp"
#include "camfolio/solvers.hpp"

namespace camfolio {

namespace detail {

inline std::ofstream open_csv(const std::string& dir, const std::string& name, std::string& path_out) {
    std::filesystem::create_directories(dir);
    path_out = (std::filesystem::path(dir) / name).string();
    std::ofstream out(path_out, std::ios::binary);
    if (!out) throw io_error("cannot write " + path_out);
    return out;
}

inline Scenario effective_scenario(const RunConfig& cfg) {
    if (cfg.rho_override)
        return scenario_with_rho(cfg.scenario, cfg.rho_override->value, cfg.rho_override->scope);
    return cfg.scenario;
}

inline EvalOptions eval_options(const RunConfig& cfg, const Scenario& sc) {
    EvalOptions o;
    o.trials = cfg.trials > 0 ? cfg.trials : sc.trials;
    o.seed = cfg.seed ? *cfg.seed : sc.master_seed;
    o.quality_threshold = effective_threshold(cfg.model, sc);
    o.freeze_outcomes = cfg.freeze_outcomes;
    o.threads = cfg.threads;
    return o;
}

} // namespace detail

// Runs the exhaustive solver (when the camera count permits), the GA, and
// the resolution-ranked baseline on one scenario; writes solve.csv.
inline int cmd_solve(const RunConfig& cfg, std::ostream& log) {
    const Scenario sc = detail::effective_scenario(cfg);
    validate_scenario(sc);
    const std::uint64_t seed = cfg.seed ? *cfg.seed : sc.master_seed;

    std::vector<SolveResult> rows;
    bool have_exact = false;
    try {
        rows.push_back(exact_solver(sc, sc.psi));
        have_exact = true;
    } catch (const capacity_error& e) {
        log << "exact solver skipped: " << e.what() << "\n";
    }
    rows.push_back(ga_solve(sc, cfg.ga, seed));
    if (have_exact) {
        const SolveResult& ex = rows[0];
        const SolveResult& ga = rows[1];
        if (ga.selection == ex.selection)
            log << "ga matches the exact optimum\n";
        else if (ga.fitness_value == ex.fitness_value)
            log << "ga ties the exact optimum fitness with a different selection\n";
        else
            log << "ga is suboptimal (exact fitness " << fmt_double(ex.fitness_value.magnitude) << " vs ga "
                << fmt_double(ga.fitness_value.magnitude) << ")\n";
    }
    const Matrix cov = covariance_matrix(sc);
    rows.push_back(detail::make_result(sc, cov, traditional_select(sc, sc.psi), 0, "traditional"));

    std::string path;
    std::ofstream out = detail::open_csv(cfg.out_dir, "solve.csv", path);
    out << "psi,method,selection,fitness_class,fitness_magnitude,expected_quality,objective_risk,generations\n";
    for (const SolveResult& r : rows) {
        out << sc.psi << ',' << r.method << ',' << r.selection.to_string() << ','
            << fitness_class_name(r.fitness_value.cls) << ',' << fmt_double(r.fitness_value.magnitude) << ','
            << fmt_double(r.expected_quality) << ',' << fmt_double(r.objective_risk) << ',' << r.generations_used
            << "\n";
        log << r.method << ": cams " << r.selection.to_string() << "  E[quality]="
            << fmt_double(r.expected_quality) << "  risk=" << fmt_double(r.objective_risk) << "  ("
            << fitness_class_name(r.fitness_value.cls) << ")\n";
    }
    log << "wrote " << path << "\n";
    return 0;
}

// Monte-Carlo evaluation of each configured strategy under correlated
// disruptions; writes simulate.csv (summary) and trials.csv (per trial).
inline int cmd_simulate(const RunConfig& cfg, std::ostream& log) {
    const Scenario sc = detail::effective_scenario(cfg);
    validate_scenario(sc);
    const QualityModel model = make_model(cfg.model, sc);
    const EvalOptions opt = detail::eval_options(cfg, sc);

    std::vector<MetricsReport> reports;
    for (Strategy st : cfg.strategies)
        reports.push_back(evaluate_strategy(sc, st, model, cfg.ga, opt));

    const std::string rho_col = cfg.rho_override ? fmt_double(cfg.rho_override->value) : std::string{"-"};
    std::string path;
    {
        std::ofstream out = detail::open_csv(cfg.out_dir, "simulate.csv", path);
        out << "strategy,psi,rho_override,trials,mean,sd,over_threshold,seed\n";
        for (const MetricsReport& r : reports) {
            out << strategy_label(r.strategy) << ',' << sc.psi << ',' << rho_col << ',' << r.trials << ','
                << fmt_double(r.mean_quality) << ',' << fmt_double(r.sd_quality) << ',' << r.over_threshold_count
                << ',' << opt.seed << "\n";
        }
    }
    log << "wrote " << path << "\n";
    {
        std::ofstream out = detail::open_csv(cfg.out_dir, "trials.csv", path);
        out << "strategy,trial,quality\n";
        for (const MetricsReport& r : reports)
            for (int t = 0; t < r.trials; ++t)
                out << strategy_label(r.strategy) << ',' << t << ',' << fmt_double(r.per_trial[t]) << "\n";
    }
    log << "wrote " << path << "\n";

    for (const MetricsReport& r : reports) {
        log << strategy_label(r.strategy) << ": cams " << r.selection.to_string() << "  mean="
            << fmt_double(r.mean_quality) << "  sd=" << fmt_double(r.sd_quality) << "  over_threshold="
            << r.over_threshold_count << "/" << r.trials << "\n";
    }
    return 0;
}

// Re-runs the simulation across a range of psi or rho values; writes
// sweep.csv with one row per (axis value, strategy).
inline int cmd_sweep(const RunConfig& cfg, std::ostream& log) {
    if (!cfg.sweep) {
        log << "sweep: no axis configured (use --axis/--values or a sweep block in the config)\n";
        return 2;
    }
    const Scenario sc = detail::effective_scenario(cfg);
    validate_scenario(sc);
    const QualityModel model = make_model(cfg.model, sc);
    const EvalOptions opt = detail::eval_options(cfg, sc);

    SweepResult res;
    if (cfg.sweep->axis == "psi") {
        std::vector<int> psis;
        for (double v : cfg.sweep->values) {
            const int k = static_cast<int>(v);
            if (static_cast<double>(k) != v)
                throw config_error("sweep over psi needs integer values, got " + fmt_double(v));
            psis.push_back(k);
        }
        res = sweep_psi(sc, psis, cfg.strategies, model, cfg.ga, opt);
    } else {
        res = sweep_rho(sc, cfg.sweep->values, cfg.strategies, model, cfg.ga, opt, cfg.sweep->scope);
    }

    std::string path;
    std::ofstream out = detail::open_csv(cfg.out_dir, "sweep.csv", path);
    out << "axis,axis_value,strategy,mean,sd,over_threshold\n";
    for (const SweepPoint& p : res.points) {
        out << res.axis << ',' << fmt_double(p.axis_value) << ',' << strategy_label(p.strategy) << ','
            << fmt_double(p.report.mean_quality) << ',' << fmt_double(p.report.sd_quality) << ','
            << p.report.over_threshold_count << "\n";
        log << res.axis << "=" << fmt_double(p.axis_value) << "  " << strategy_label(p.strategy) << ": cams "
            << p.report.selection.to_string() << "  mean=" << fmt_double(p.report.mean_quality) << "  sd="
            << fmt_double(p.report.sd_quality) << "  over_threshold=" << p.report.over_threshold_count << "/"
            << p.report.trials << "\n";
    }
    log << "wrote " << path << "\n";
    return 0;
}

// Static checks on a run config: per-camera moments, correlation health
// (PSD repair distance), quality-model wiring, and whether the expected
// quality floor is attainable within the budget. Nonzero exit when the
// floor cannot be met.
inline int cmd_validate(const RunConfig& cfg, std::ostream& log) {
    const Scenario base = cfg.scenario;
    validate_scenario(base);
    log << "scenario: " << cfg.scenario_path << "\n";
    log << "cameras: " << base.size() << "  psi: " << base.psi << "  theta: " << fmt_double(base.theta)
        << "  trials: " << (cfg.trials > 0 ? cfg.trials : base.trials) << "\n";

    for (const CameraSpec& c : base.cameras) {
        const BetaMoments m = beta_moments(c.beta_a, c.beta_b);
        log << "  camera " << (c.id + 1) << ": " << c.width << "x" << c.height << "  E[p]="
            << fmt_double(m.mean) << "  sd[p]=" << fmt_double(m.stddev) << "  E[R]="
            << fmt_double(expected_resolution(c)) << "\n";
    }

    const Scenario sc = detail::effective_scenario(cfg);
    if (cfg.rho_override)
        log << "rho override: " << fmt_double(cfg.rho_override->value)
            << (cfg.rho_override->scope == RhoScope::HighResBlock ? " (high-res block)" : " (all pairs)")
            << "\n";
    const CopulaFactor f = prepare_copula(sc.rho);
    if (f.repair_delta > 0.0)
        log << "warning: correlation matrix is not PSD; repaired (max entry change "
            << fmt_double(f.repair_delta) << ")\n";
    else
        log << "correlation matrix: PSD, no repair needed\n";

    const QualityModel model = make_model(cfg.model, sc);
    log << "quality model: " << quality_variant_label(model.variant()) << "  over-threshold cutoff: "
        << fmt_double(effective_threshold(cfg.model, sc)) << "\n";

    // Best attainable expected quality under the budget is the top-psi sum
    // of per-camera expectations (the objective's quality term is additive).
    std::vector<double> er;
    for (const CameraSpec& c : sc.cameras) er.push_back(expected_resolution(c));
    std::sort(er.begin(), er.end(), std::greater<double>());
    double best = 0.0;
    for (int i = 0; i < sc.psi; ++i) best += er[i];
    log << "best expected quality at psi=" << sc.psi << ": " << fmt_double(best) << "\n";
    if (best < sc.theta) {
        log << "error: theta " << fmt_double(sc.theta) << " is unattainable within the budget\n";
        return 1;
    }
    log << "theta " << fmt_double(sc.theta) << " is attainable\n";
    return 0;
}

} // namespace camfolio
