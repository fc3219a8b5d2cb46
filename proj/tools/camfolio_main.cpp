#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "camfolio/camfolio.hpp"

namespace {

struct CliArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::optional<int> threads;
    std::string out_dir;
    bool freeze_outcomes = false;
    // sweep only
    std::string axis;
    std::vector<double> values;
    std::string scope;
};

// Flags beat the config file, which beats built-in defaults.
camfolio::RunConfig finalize(const CliArgs& a) {
    camfolio::RunConfig cfg = camfolio::load_run_config(a.config_path);
    if (a.seed) cfg.seed = *a.seed;
    if (a.trials) cfg.trials = *a.trials;
    if (a.threads) cfg.threads = *a.threads;
    if (!a.out_dir.empty()) cfg.out_dir = a.out_dir;
    if (a.freeze_outcomes) cfg.freeze_outcomes = true;
    if (!a.axis.empty() || !a.values.empty()) {
        if (a.axis.empty() || a.values.empty())
            throw camfolio::config_error("--axis and --values must be given together");
        camfolio::SweepConfig sw;
        sw.axis = a.axis;
        sw.values = a.values;
        sw.scope = a.scope.empty() ? (cfg.sweep ? cfg.sweep->scope : camfolio::RhoScope::HighResBlock)
                                   : camfolio::rho_scope_from_label(a.scope);
        cfg.sweep = sw;
    } else if (!a.scope.empty() && cfg.sweep) {
        cfg.sweep->scope = camfolio::rho_scope_from_label(a.scope);
    }
    return cfg;
}

void add_common(CLI::App* cmd, CliArgs& a) {
    cmd->add_option("-c,--config", a.config_path, "Run config (JSON)")->required();
    cmd->add_option("-s,--seed", a.seed, "Master seed (overrides config)");
    cmd->add_option("-t,--trials", a.trials, "Simulation trials (overrides config)");
    cmd->add_option("-j,--threads", a.threads, "Worker threads for trial simulation");
    cmd->add_option("-o,--out", a.out_dir, "Output directory (overrides config)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Portfolio-based camera selection for disruption-prone multi-view capture"};
    app.require_subcommand(1);

    CliArgs a;
    CLI::App* solve = app.add_subcommand("solve", "Pick a camera subset (exact, GA, resolution-ranked)");
    add_common(solve, a);
    CLI::App* simulate = app.add_subcommand("simulate", "Monte-Carlo evaluation of the configured strategies");
    add_common(simulate, a);
    simulate->add_flag("--freeze-outcomes", a.freeze_outcomes,
                       "Deterministic outcomes: a camera is up iff its disruption-free probability >= 0.5");
    CLI::App* sweep = app.add_subcommand("sweep", "Simulate across a range of psi or rho values");
    add_common(sweep, a);
    sweep->add_option("--axis", a.axis, "Sweep axis: psi or rho");
    sweep->add_option("--values", a.values, "Axis values")->delimiter(',');
    sweep->add_option("--scope", a.scope, "rho override scope: highres or all");
    CLI::App* validate = app.add_subcommand("validate", "Check a run config without simulating");
    add_common(validate, a);

    CLI11_PARSE(app, argc, argv);

    try {
        const camfolio::RunConfig cfg = finalize(a);
        if (solve->parsed()) return camfolio::cmd_solve(cfg, std::cout);
        if (simulate->parsed()) return camfolio::cmd_simulate(cfg, std::cout);
        if (sweep->parsed()) return camfolio::cmd_sweep(cfg, std::cout);
        if (validate->parsed()) return camfolio::cmd_validate(cfg, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
