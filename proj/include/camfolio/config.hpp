#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "camfolio/harness.hpp"
#include "camfolio/quality.hpp"
#include "camfolio/scenario.hpp"
#include "camfolio/solvers.hpp"

namespace camfolio {

inline nlohmann::json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open " + path);
    try {
        return nlohmann::json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const nlohmann::json::exception& e) {
        throw config_error(path + ": " + e.what());
    }
}

// Scenario file: cameras (array of {width, height, beta_a, beta_b}, ids
// assigned by position), rho (full NxN matrix), theta, psi, and optional
// trials / master_seed.
inline Scenario load_scenario(const std::string& path) {
    const nlohmann::json j = parse_json_file(path);
    Scenario s;
    try {
        const auto& cams = j.at("cameras");
        if (!cams.is_array() || cams.empty())
            throw config_error(path + ": cameras must be a non-empty array");
        int id = 0;
        for (const auto& c : cams) {
            CameraSpec cs;
            cs.id = id++;
            cs.width = c.at("width").get<int>();
            cs.height = c.at("height").get<int>();
            cs.beta_a = c.at("beta_a").get<double>();
            cs.beta_b = c.at("beta_b").get<double>();
            s.cameras.push_back(cs);
        }
        const std::size_t n = s.cameras.size();
        const auto& rho = j.at("rho");
        if (!rho.is_array() || rho.size() != n)
            throw config_error(path + ": rho must be a " + std::to_string(n) + "x" + std::to_string(n) +
                               " matrix");
        Matrix m(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& row = rho.at(i);
            if (!row.is_array() || row.size() != n)
                throw config_error(path + ": rho row " + std::to_string(i) + " must have " +
                                   std::to_string(n) + " entries");
            for (std::size_t k = 0; k < n; ++k) m.at(i, k) = row.at(k).get<double>();
        }
        s.rho = CorrelationMatrix(m);
        s.theta = j.at("theta").get<double>();
        s.psi = j.at("psi").get<int>();
        s.trials = j.value("trials", 20);
        s.master_seed = j.value("master_seed", std::uint64_t{0});
    } catch (const nlohmann::json::exception& e) {
        throw config_error(path + ": " + e.what());
    }
    validate_scenario(s);
    return s;
}

inline QualityVariant quality_variant_from_label(const std::string& v) {
    if (v == "resolution_sum") return QualityVariant::ResolutionSum;
    if (v == "table") return QualityVariant::TableDriven;
    if (v == "synthetic") return QualityVariant::SyntheticAdditive;
    throw config_error("unknown model variant '" + v + "' (resolution_sum|table|synthetic)");
}

inline const char* quality_variant_label(QualityVariant v) {
    switch (v) {
        case QualityVariant::ResolutionSum: return "resolution_sum";
        case QualityVariant::TableDriven: return "table";
        case QualityVariant::SyntheticAdditive: return "synthetic";
    }
    return "?";
}

inline RhoScope rho_scope_from_label(const std::string& v) {
    if (v == "highres") return RhoScope::HighResBlock;
    if (v == "all") return RhoScope::AllOffDiagonal;
    throw config_error("unknown rho scope '" + v + "' (highres|all)");
}

struct ModelConfig {
    QualityVariant variant = QualityVariant::ResolutionSum;
    std::string table_path; // TableDriven only; resolved against the config dir
    bool strict = false;
    // Over-threshold cutoff in the model's unit. NaN: theta for
    // resolution_sum, 0 otherwise.
    double threshold = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> base;       // SyntheticAdditive only
    std::vector<double> synergy;    // row-major NxN, SyntheticAdditive only
};

struct SweepConfig {
    std::string axis; // "psi" or "rho"
    std::vector<double> values;
    RhoScope scope = RhoScope::HighResBlock;
};

struct RhoOverride {
    double value = 0.0;
    RhoScope scope = RhoScope::HighResBlock;
};

// One runnable experiment: scenario + solver/model/simulation settings.
// Every field except `scenario` has a default, and the solve/simulate/sweep
// commands share the format.
struct RunConfig {
    std::string description;
    std::string scenario_path;
    Scenario scenario;
    GAParams ga; // mutation_rate sentinel resolved at solve time
    std::vector<Strategy> strategies = {Strategy::Portfolio, Strategy::Traditional};
    ModelConfig model;
    std::optional<SweepConfig> sweep;
    std::optional<RhoOverride> rho_override;
    int trials = 0; // <= 0: scenario.trials
    std::optional<std::uint64_t> seed; // unset: scenario.master_seed
    std::string out_dir = "out";
    int threads = 1;
    bool freeze_outcomes = false;
};

inline RunConfig load_run_config(const std::string& path) {
    const nlohmann::json j = parse_json_file(path);
    const std::filesystem::path dir = std::filesystem::path(path).parent_path();
    RunConfig cfg;
    try {
        cfg.description = j.value("description", std::string{});
        cfg.scenario_path = (dir / j.at("scenario").get<std::string>()).string();

        if (j.contains("ga")) {
            const auto& g = j.at("ga");
            cfg.ga.population_size = g.value("population_size", cfg.ga.population_size);
            cfg.ga.max_generations = g.value("max_generations", cfg.ga.max_generations);
            cfg.ga.crossover_rate = g.value("crossover_rate", cfg.ga.crossover_rate);
            cfg.ga.mutation_rate = g.value("mutation_rate", cfg.ga.mutation_rate);
            cfg.ga.elitism_count = g.value("elitism_count", cfg.ga.elitism_count);
        }

        if (j.contains("strategies")) {
            cfg.strategies.clear();
            for (const auto& s : j.at("strategies"))
                cfg.strategies.push_back(strategy_from_label(s.get<std::string>()));
            if (cfg.strategies.empty()) throw config_error(path + ": strategies must be non-empty");
        }

        if (j.contains("model")) {
            const auto& m = j.at("model");
            cfg.model.variant = quality_variant_from_label(m.value("variant", std::string{"resolution_sum"}));
            if (m.contains("path"))
                cfg.model.table_path = (dir / m.at("path").get<std::string>()).string();
            cfg.model.strict = m.value("strict", false);
            if (m.contains("threshold")) cfg.model.threshold = m.at("threshold").get<double>();
            if (m.contains("base")) cfg.model.base = m.at("base").get<std::vector<double>>();
            if (m.contains("synergy")) {
                for (const auto& row : m.at("synergy"))
                    for (const auto& v : row) cfg.model.synergy.push_back(v.get<double>());
            }
        }

        if (j.contains("sweep")) {
            const auto& w = j.at("sweep");
            SweepConfig sw;
            sw.axis = w.at("axis").get<std::string>();
            if (sw.axis != "psi" && sw.axis != "rho")
                throw config_error(path + ": sweep.axis must be psi or rho");
            sw.values = w.at("values").get<std::vector<double>>();
            if (sw.values.empty()) throw config_error(path + ": sweep.values must be non-empty");
            sw.scope = rho_scope_from_label(w.value("scope", std::string{"highres"}));
            cfg.sweep = sw;
        }

        if (j.contains("rho_override")) {
            const auto& r = j.at("rho_override");
            RhoOverride ov;
            ov.value = r.at("value").get<double>();
            ov.scope = rho_scope_from_label(r.value("scope", std::string{"highres"}));
            cfg.rho_override = ov;
        }

        cfg.trials = j.value("trials", 0);
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
        cfg.out_dir = j.value("out_dir", std::string{"out"});
        cfg.threads = j.value("threads", 1);
        cfg.freeze_outcomes = j.value("freeze_outcomes", false);
    } catch (const nlohmann::json::exception& e) {
        throw config_error(path + ": " + e.what());
    }

    cfg.scenario = load_scenario(cfg.scenario_path);
    if (cfg.threads < 1) throw config_error(path + ": threads must be >= 1");
    return cfg;
}

// Instantiates the configured quality model for a scenario.
inline QualityModel make_model(const ModelConfig& mc, const Scenario& s) {
    const std::size_t n = s.size();
    switch (mc.variant) {
        case QualityVariant::ResolutionSum: return QualityModel::resolution_sum();
        case QualityVariant::TableDriven: {
            if (mc.table_path.empty())
                throw config_error("model.path is required for the table variant");
            return QualityModel::table_driven(load_quality_table(mc.table_path, n), n, mc.strict);
        }
        case QualityVariant::SyntheticAdditive: {
            if (mc.base.size() != n)
                throw config_error("model.base must list " + std::to_string(n) + " per-camera values");
            Matrix syn(n);
            if (!mc.synergy.empty()) {
                if (mc.synergy.size() != n * n)
                    throw config_error("model.synergy must be a " + std::to_string(n) + "x" +
                                       std::to_string(n) + " matrix");
                syn.a = mc.synergy;
            }
            return QualityModel::synthetic_additive(mc.base, syn);
        }
    }
    throw config_error("unhandled model variant");
}

// The cutoff used for over-threshold counts: explicit if configured,
// otherwise theta (which is only meaningful in pixel units).
inline double effective_threshold(const ModelConfig& mc, const Scenario& s) {
    if (!std::isnan(mc.threshold)) return mc.threshold;
    return mc.variant == QualityVariant::ResolutionSum ? s.theta : 0.0;
}

} // namespace camfolio
