#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <vector>

#include <camfolio/camfolio.hpp>

#include "support/oracles.hpp"

using namespace camfolio;
using Catch::Approx;
using Catch::Matchers::ContainsSubstring;

namespace {

Scenario two_cam_scenario() {
    Scenario s;
    s.cameras.push_back({0, 1920, 1080, 2.0, 3.0});
    s.cameras.push_back({1, 1280, 720, 2.0, 3.0});
    s.rho = CorrelationMatrix::identity(2);
    s.theta = 0.0;
    s.psi = 2;
    return s;
}

double residual_for(const FitResult& fit, std::uint32_t mask) {
    for (const auto& [m, r] : fit.residuals)
        if (m == mask) return r;
    FAIL("no residual recorded for mask " << mask);
    return 0.0;
}

} // namespace

TEST_CASE("subset labels use 1-based comma-separated camera ids") {
    CHECK(subset_label(0) == "-");
    CHECK(subset_label(0b1) == "1");
    CHECK(subset_label(0b10011) == "1,2,5");
    CHECK(subset_label(0b1111111) == "1,2,3,4,5,6,7");
}

TEST_CASE("resolution-sum model adds the alive resolutions") {
    const Scenario s = two_cam_scenario();
    const QualityModel m = QualityModel::resolution_sum();
    CHECK(m.delivered(0, s) == 0.0);
    CHECK(m.delivered(0b01, s) == 1920.0 * 1080.0);
    CHECK(m.delivered(0b10, s) == 1280.0 * 720.0);
    CHECK(m.delivered(0b11, s) == 1920.0 * 1080.0 + 1280.0 * 720.0);
    CHECK(delivered_quality(m, 0b11, s) == m.delivered(0b11, s));
}

TEST_CASE("table-driven model looks up measured subsets") {
    const Scenario s = two_cam_scenario();
    QualityTable table{{0b11, 60.0}, {0b01, 10.0}, {0b10, 20.0}};

    SECTION("strict mode errors on a missing subset") {
        const QualityModel m = QualityModel::table_driven(table, 2, true);
        CHECK(m.delivered(0b01, s) == 10.0);
        CHECK(m.delivered(0b11, s) == 60.0);
        CHECK_THROWS_MATCHES(m.delivered(0, s), missing_subset_error,
                             Catch::Matchers::MessageMatches(ContainsSubstring("subset -")));
    }
    SECTION("non-strict mode falls back to the additive fit") {
        // Three observations pin three contributions exactly: 10, 20, 30.
        const QualityModel m = QualityModel::table_driven(table, 2, false);
        CHECK(m.delivered(0b11, s) == 60.0);
        CHECK(m.delivered(0, s) == Approx(0.0).margin(1e-9));
    }
    SECTION("negative table values are rejected") {
        table[0b01] = -1.0;
        CHECK_THROWS_MATCHES(QualityModel::table_driven(table, 2, true), invalid_input,
                             Catch::Matchers::MessageMatches(ContainsSubstring("subset 1")));
    }
}

TEST_CASE("non-strict fallback interpolates an exactly additive table") {
    Scenario s;
    for (int i = 0; i < 3; ++i) s.cameras.push_back({i, 1280, 720, 2.0, 3.0});
    s.rho = CorrelationMatrix::identity(3);
    s.theta = 0.0;
    s.psi = 3;
    const QualityTable table{{0b111, 60.0}, {0b001, 10.0}, {0b010, 20.0}};
    const QualityModel m = QualityModel::table_driven(table, 3, false);
    CHECK(m.delivered(0b101, s) == Approx(40.0).epsilon(1e-12));
    CHECK(m.delivered(0b110, s) == Approx(50.0).epsilon(1e-12));
}

TEST_CASE("additive fit recovers planted per-camera contributions") {
    const std::vector<double> planted{5.0, 7.0, 11.0, 13.0};
    QualityTable table;
    for (std::uint32_t mask = 0; mask < 16; ++mask) {
        double v = 0.0;
        for (int i = 0; i < 4; ++i)
            if (mask & (1u << i)) v += planted[i];
        table[mask] = v;
    }
    const FitResult fit = fit_additive_model(table, 4);
    REQUIRE(fit.contributions.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(fit.contributions[i] == Approx(planted[i]).epsilon(1e-9));
    CHECK(fit.rms_residual < 1e-9);
    CHECK_FALSE(fit.synergies.has_value());
    for (const auto& [mask, r] : fit.residuals) CHECK(std::abs(r) < 1e-8);
}

TEST_CASE("synergy fit recovers planted pairwise terms") {
    const std::vector<double> base{5.0, 7.0, 11.0};
    Matrix syn(3);
    syn.at(0, 1) = syn.at(1, 0) = 2.0;
    syn.at(0, 2) = syn.at(2, 0) = -3.0;
    syn.at(1, 2) = syn.at(2, 1) = 4.0;
    const QualityModel gen = QualityModel::synthetic_additive(base, syn);
    Scenario dummy;

    QualityTable table;
    for (std::uint32_t mask = 0; mask < 8; ++mask) {
        const double v = gen.delivered(mask, dummy);
        if (v >= 0.0) table[mask] = v;
    }
    REQUIRE(table.size() == 8);

    const FitResult fit = fit_additive_model(table, 3, true);
    REQUIRE(fit.synergies.has_value());
    CHECK(fit.synergies->at(0, 1) == Approx(2.0).margin(1e-9));
    CHECK(fit.synergies->at(0, 2) == Approx(-3.0).margin(1e-9));
    CHECK(fit.synergies->at(1, 2) == Approx(4.0).margin(1e-9));
    for (int i = 0; i < 3; ++i) CHECK(fit.contributions[i] == Approx(base[i]).margin(1e-9));
    CHECK(fit.rms_residual < 1e-9);
}

TEST_CASE("fit argument guards") {
    SECTION("empty table") {
        CHECK_THROWS_AS(fit_additive_model({}, 3), invalid_input);
    }
    SECTION("missing full set") {
        const QualityTable table{{0b001, 1.0}, {0b010, 2.0}};
        CHECK_THROWS_MATCHES(fit_additive_model(table, 3), invalid_input,
                             Catch::Matchers::MessageMatches(ContainsSubstring("1,2,3")));
    }
    SECTION("synergy fit needs enough observations") {
        QualityTable table{{0b111, 6.0}, {0b001, 1.0}, {0b010, 2.0}, {0b100, 3.0}, {0b011, 3.0}};
        CHECK_THROWS_AS(fit_additive_model(table, 3, true), underdetermined_error);
        table[0b101] = 4.0;
        CHECK_NOTHROW(fit_additive_model(table, 3, true));
    }
}

TEST_CASE("synthetic additive model") {
    const std::vector<double> base{10.0, 20.0, 30.0};
    Matrix syn(3);
    syn.at(0, 1) = syn.at(1, 0) = 5.0;
    syn.at(1, 2) = syn.at(2, 1) = -2.0;
    const QualityModel m = QualityModel::synthetic_additive(base, syn);
    Scenario dummy;
    CHECK(m.delivered(0, dummy) == 0.0);
    CHECK(m.delivered(0b001, dummy) == 10.0);
    CHECK(m.delivered(0b011, dummy) == 35.0);
    CHECK(m.delivered(0b110, dummy) == 48.0);
    CHECK(m.delivered(0b111, dummy) == 63.0);

    CHECK_THROWS_AS(QualityModel::synthetic_additive(base, Matrix(2)), invalid_input);
    CHECK_THROWS_MATCHES(QualityModel::synthetic_additive({10.0, -1.0, 30.0}, syn), invalid_parameter,
                         Catch::Matchers::MessageMatches(ContainsSubstring("camera 1")));
}

TEST_CASE("measured reconstruction table anchors") {
    const QualityTable table = load_quality_table("configs/dance1_quality.table", 7);
    REQUIRE(table.size() == 4);
    CHECK(table.at(0b1111111) == 166877.0);
    CHECK(table.at(0b1111101) == 82404.0);
    CHECK(table.at(0b1101111) == 118914.0);
    CHECK(table.at(0b1101101) == 57673.0);

    // Joint-removal interaction of cameras 2 and 5 survives the additive fit
    // in the residuals: the fitted part cancels exactly in this combination.
    const FitResult fit = fit_additive_model(table, 7);
    const double combo = residual_for(fit, 0b1111111) - residual_for(fit, 0b1111101) -
                         residual_for(fit, 0b1101111) + residual_for(fit, 0b1101101);
    CHECK(combo == Approx(23232.0).margin(1e-4));
    CHECK(166877.0 - 82404.0 - 118914.0 + 57673.0 == 23232.0);
}

TEST_CASE("quality table parsing") {
    oracle::TempDir dir("quality");

    SECTION("comments, blanks, and the empty-subset marker") {
        const std::string path = dir.file("ok.table");
        std::ofstream(path) << "# measured on the dance sequence\n"
                               "1,2,3 -> 100.5\n"
                               "\n"
                               "2 -> 40 # trailing comment\n"
                               "- -> 0\n";
        const QualityTable t = load_quality_table(path, 3);
        REQUIRE(t.size() == 3);
        CHECK(t.at(0b111) == 100.5);
        CHECK(t.at(0b010) == 40.0);
        CHECK(t.at(0) == 0.0);
    }
    SECTION("parse errors name the file and line") {
        struct Bad {
            const char* name;
            const char* content;
            const char* needle;
        };
        const Bad cases[] = {
            {"noarrow.table", "1,2 100\n", "expected 'ids -> value'"},
            {"badid.table", "1,x -> 5\n", "bad camera id 'x'"},
            {"id0.table", "0,1 -> 5\n", "camera id 0 out of 1..3"},
            {"id9.table", "1,2,3 -> 5\n4 -> 2\n", "camera id 4 out of 1..3"},
            {"negval.table", "1 -> -3\n", "value must be >= 0"},
            {"badval.table", "1 -> abc\n", "bad value"},
            {"noids.table", " -> 5\n", "no camera ids"},
        };
        for (const Bad& c : cases) {
            const std::string path = dir.file(c.name);
            std::ofstream(path) << c.content;
            INFO(c.name);
            CHECK_THROWS_MATCHES(load_quality_table(path, 3), invalid_input,
                                 Catch::Matchers::MessageMatches(ContainsSubstring(c.needle)));
        }
        // line numbers are reported
        const std::string path = dir.file("line2.table");
        std::ofstream(path) << "1 -> 5\n2 -> oops\n";
        CHECK_THROWS_MATCHES(load_quality_table(path, 3), invalid_input,
                             Catch::Matchers::MessageMatches(ContainsSubstring(":2:")));
    }
    SECTION("missing or empty files") {
        CHECK_THROWS_AS(load_quality_table(dir.file("absent.table"), 3), invalid_input);
        const std::string path = dir.file("empty.table");
        std::ofstream(path) << "# nothing measured yet\n";
        CHECK_THROWS_AS(load_quality_table(path, 3), invalid_input);
    }
}

TEST_CASE("quality table save/load round trip preserves doubles") {
    oracle::TempDir dir("quality");
    QualityTable table;
    table[0] = 0.0;
    table[0b001] = 0.1 + 0.2;
    table[0b011] = 1.0 / 3.0;
    table[0b111] = 166877.0;
    const std::string path = dir.file("roundtrip.table");
    save_quality_table(path, table);
    const QualityTable back = load_quality_table(path, 3);
    REQUIRE(back.size() == table.size());
    for (const auto& [mask, value] : table) CHECK(back.at(mask) == value);
}
