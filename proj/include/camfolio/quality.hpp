#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "camfolio/errors.hpp"
#include "camfolio/format.hpp"
#include "camfolio/matrix.hpp"
#include "camfolio/scenario.hpp"

namespace camfolio {

// Delivered-quality table: alive-subset bitmask -> quality (e.g. vertex
// count of the reconstruction computed from exactly that camera subset).
using QualityTable = std::map<std::uint32_t, double>;

// "1,2,5" with 1-based camera ids; "-" for the empty subset.
inline std::string subset_label(std::uint32_t mask) {
    if (mask == 0) return "-";
    std::string out;
    for (int i = 0; i < 32; ++i) {
        if (!(mask & (1u << i))) continue;
        if (!out.empty()) out += ',';
        out += std::to_string(i + 1);
    }
    return out;
}

struct FitResult {
    std::vector<double> contributions;                     // one per camera
    std::optional<Matrix> synergies;                       // pairwise, when fitted
    std::vector<std::pair<std::uint32_t, double>> residuals; // observed - predicted, per table row
    double rms_residual = 0.0;
};

// Least-squares additive decomposition of a quality table: per-camera
// contributions, plus pairwise synergies when requested. Underdetermined
// per-camera systems resolve to the minimum-norm solution (a full-set-only
// table splits the total evenly); the synergy fit instead requires at least
// as many observations as parameters.
inline FitResult fit_additive_model(const QualityTable& table, std::size_t n_cameras,
                                    bool with_synergies = false) {
    if (table.empty()) throw invalid_input("fit_additive_model: table is empty");
    const std::uint32_t full = (n_cameras >= 32) ? 0xFFFFFFFFu : ((1u << n_cameras) - 1u);
    if (table.find(full) == table.end())
        throw invalid_input("fit_additive_model: table must contain the full set " + subset_label(full));

    const std::size_t rows = table.size();
    const std::size_t n_pairs = n_cameras * (n_cameras - 1) / 2;
    const std::size_t cols = with_synergies ? n_cameras + n_pairs : n_cameras;
    if (with_synergies && rows < cols)
        throw underdetermined_error("fit_additive_model: " + std::to_string(rows) +
                                    " observations cannot determine " + std::to_string(cols) +
                                    " parameters (disable synergies or add subsets)");

    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(rows, cols);
    Eigen::VectorXd v(rows);
    std::size_t r = 0;
    for (const auto& [mask, value] : table) {
        v(r) = value;
        for (std::size_t i = 0; i < n_cameras; ++i)
            if (mask & (1u << i)) X(r, i) = 1.0;
        if (with_synergies) {
            std::size_t p = 0;
            for (std::size_t i = 0; i < n_cameras; ++i)
                for (std::size_t j = i + 1; j < n_cameras; ++j, ++p)
                    if ((mask & (1u << i)) && (mask & (1u << j))) X(r, n_cameras + p) = 1.0;
        }
        ++r;
    }

    Eigen::VectorXd c = X.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(v);
    Eigen::VectorXd resid = v - X * c;

    FitResult fit;
    fit.contributions.assign(c.data(), c.data() + n_cameras);
    if (with_synergies) {
        Matrix syn(n_cameras);
        std::size_t p = 0;
        for (std::size_t i = 0; i < n_cameras; ++i)
            for (std::size_t j = i + 1; j < n_cameras; ++j, ++p) {
                syn.at(i, j) = c(n_cameras + p);
                syn.at(j, i) = c(n_cameras + p);
            }
        fit.synergies = std::move(syn);
    }
    r = 0;
    double ss = 0.0;
    for (const auto& [mask, value] : table) {
        fit.residuals.emplace_back(mask, resid(r));
        ss += resid(r) * resid(r);
        ++r;
    }
    fit.rms_residual = std::sqrt(ss / static_cast<double>(rows));
    return fit;
}

enum class QualityVariant { ResolutionSum, TableDriven, SyntheticAdditive };

// Maps an alive camera subset to delivered quality. Three variants:
//  - ResolutionSum: sum of alive resolutions (pixels);
//  - TableDriven: exact lookup in a measured table (strict mode errors on a
//    missing subset; non-strict falls back to the table's additive fit);
//  - SyntheticAdditive: per-camera bases plus pairwise synergies.
class QualityModel {
  public:
    static QualityModel resolution_sum() {
        QualityModel m;
        m.variant_ = QualityVariant::ResolutionSum;
        return m;
    }

    static QualityModel table_driven(QualityTable table, std::size_t n_cameras, bool strict) {
        QualityModel m;
        m.variant_ = QualityVariant::TableDriven;
        m.strict_ = strict;
        m.n_ = n_cameras;
        for (const auto& [mask, value] : table) {
            if (value < 0.0)
                throw invalid_input("quality table: negative value for subset " + subset_label(mask));
        }
        m.table_ = std::move(table);
        if (!strict) m.fallback_ = fit_additive_model(m.table_, n_cameras, false).contributions;
        return m;
    }

    static QualityModel synthetic_additive(std::vector<double> base, Matrix synergy) {
        QualityModel m;
        m.variant_ = QualityVariant::SyntheticAdditive;
        m.n_ = base.size();
        if (synergy.n != base.size())
            throw invalid_input("synthetic model: synergy matrix size mismatch");
        for (std::size_t i = 0; i < base.size(); ++i)
            if (base[i] < 0.0)
                throw invalid_parameter("synthetic model: base contribution of camera " +
                                        std::to_string(i) + " must be >= 0");
        m.base_ = std::move(base);
        m.synergy_ = std::move(synergy);
        return m;
    }

    QualityVariant variant() const { return variant_; }
    bool strict() const { return strict_; }
    const QualityTable& table() const { return table_; }

    double delivered(std::uint32_t alive_mask, const Scenario& s) const {
        switch (variant_) {
            case QualityVariant::ResolutionSum: {
                double q = 0.0;
                for (std::size_t i = 0; i < s.size(); ++i)
                    if (alive_mask & (1u << i)) q += s.cameras[i].resolution();
                return q;
            }
            case QualityVariant::TableDriven: {
                auto it = table_.find(alive_mask);
                if (it != table_.end()) return it->second;
                if (strict_)
                    throw missing_subset_error("quality table has no entry for subset " +
                                               subset_label(alive_mask));
                double q = 0.0;
                for (std::size_t i = 0; i < n_; ++i)
                    if (alive_mask & (1u << i)) q += fallback_[i];
                return q;
            }
            case QualityVariant::SyntheticAdditive: {
                double q = 0.0;
                for (std::size_t i = 0; i < n_; ++i) {
                    if (!(alive_mask & (1u << i))) continue;
                    q += base_[i];
                    for (std::size_t j = i + 1; j < n_; ++j)
                        if (alive_mask & (1u << j)) q += synergy_.at(i, j);
                }
                return q;
            }
        }
        return 0.0;
    }

  private:
    QualityVariant variant_ = QualityVariant::ResolutionSum;
    bool strict_ = false;
    std::size_t n_ = 0;
    QualityTable table_;
    std::vector<double> fallback_;
    std::vector<double> base_;
    Matrix synergy_;
};

inline double delivered_quality(const QualityModel& model, std::uint32_t alive_mask, const Scenario& s) {
    return model.delivered(alive_mask, s);
}

// Text format, one subset per line: "1,2,5 -> 93214" (1-based camera ids,
// "-" for the empty subset). '#' starts a comment.
inline QualityTable load_quality_table(const std::string& path, std::size_t n_cameras) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open quality table: " + path);
    QualityTable table;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto arrow = line.find("->");
        if (arrow == std::string::npos)
            throw invalid_input(path + ":" + std::to_string(lineno) + ": expected 'ids -> value'");
        std::string ids = line.substr(0, arrow);
        std::string val = line.substr(arrow + 2);

        std::uint32_t mask = 0;
        std::istringstream ids_in(ids);
        std::string tok;
        bool empty_marker = false;
        while (std::getline(ids_in, tok, ',')) {
            const auto b = tok.find_first_not_of(" \t");
            const auto e = tok.find_last_not_of(" \t");
            if (b == std::string::npos) continue;
            tok = tok.substr(b, e - b + 1);
            if (tok == "-") {
                empty_marker = true;
                continue;
            }
            int id = 0;
            try {
                id = std::stoi(tok);
            } catch (const std::exception&) {
                throw invalid_input(path + ":" + std::to_string(lineno) + ": bad camera id '" + tok + "'");
            }
            if (id < 1 || id > static_cast<int>(n_cameras))
                throw invalid_input(path + ":" + std::to_string(lineno) + ": camera id " +
                                    std::to_string(id) + " out of 1.." + std::to_string(n_cameras));
            mask |= (1u << (id - 1));
        }
        if (mask == 0 && !empty_marker)
            throw invalid_input(path + ":" + std::to_string(lineno) + ": no camera ids before '->'");
        double value = 0.0;
        try {
            value = std::stod(val);
        } catch (const std::exception&) {
            throw invalid_input(path + ":" + std::to_string(lineno) + ": bad value '" + val + "'");
        }
        if (value < 0.0)
            throw invalid_input(path + ":" + std::to_string(lineno) + ": value must be >= 0");
        table[mask] = value;
    }
    if (table.empty()) throw invalid_input("quality table is empty: " + path);
    return table;
}

inline void save_quality_table(const std::string& path, const QualityTable& table) {
    std::ofstream out(path);
    if (!out) throw invalid_input("cannot write quality table: " + path);
    for (const auto& [mask, value] : table)
        out << subset_label(mask) << " -> " << fmt_double(value) << "\n";
}

} // namespace camfolio
