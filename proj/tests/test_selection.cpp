#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "camfolio/camfolio.hpp"
#include "support/oracles.hpp"

using namespace camfolio;
using Catch::Approx;

TEST_CASE("selection vector basics") {
    SelectionVector s(7);
    CHECK(s.popcount() == 0);
    CHECK(s.to_string() == "-");
    s.set(0);
    s.set(2);
    s.set(4);
    CHECK(s.popcount() == 3);
    CHECK(s.to_string() == "1;3;5");
    CHECK(s.indices() == std::vector<int>{0, 2, 4});
    CHECK(s.to_mask() == 0b10101u);
    CHECK(SelectionVector::from_mask(7, 0b10101u) == s);
    CHECK(SelectionVector::from_indices(7, {0, 2, 4}) == s);
    s.set(2, false);
    CHECK(s.popcount() == 2);
}

TEST_CASE("lexicographic order prefers lower camera indices") {
    const auto a = SelectionVector::from_indices(4, {0, 3});
    const auto b = SelectionVector::from_indices(4, {1, 2});
    CHECK(lex_before(a, b));
    CHECK_FALSE(lex_before(b, a));
    CHECK_FALSE(lex_before(a, a));
    const auto c = SelectionVector::from_indices(4, {0, 1});
    CHECK(lex_before(c, a));
}

TEST_CASE("fitness values order by class then magnitude") {
    const FitnessValue risk_small{FitnessClass::Risk, 1.0};
    const FitnessValue risk_big{FitnessClass::Risk, 1e18};
    const FitnessValue deficit{FitnessClass::QualityDeficit, 1.0};
    const FitnessValue budget{FitnessClass::InfeasibleBudget, 1.0};
    CHECK(risk_small < risk_big);
    CHECK(risk_big < deficit); // any feasible risk beats any deficit
    CHECK(deficit < budget);   // any deficit beats any budget violation
    CHECK(risk_small <= risk_small);
    CHECK(budget > risk_big);
    CHECK(FitnessValue{FitnessClass::Risk, 2.0} == FitnessValue{FitnessClass::Risk, 2.0});
    CHECK_FALSE(FitnessValue{FitnessClass::Risk, 2.0} == FitnessValue{FitnessClass::QualityDeficit, 2.0});
}

static Scenario two_hi_cameras(double rho01) {
    Scenario s;
    s.cameras.push_back({0, 1920, 1080, 6.0, 3.0});
    s.cameras.push_back({1, 1920, 1080, 6.0, 3.0});
    s.rho = CorrelationMatrix::uniform(2, rho01);
    s.theta = 1036800.0;
    s.psi = 2;
    return s;
}

TEST_CASE("expected quality sums selected expectations") {
    const Scenario s = two_hi_cameras(0.5);
    CHECK(expected_quality(s, SelectionVector(2)) == 0.0);
    CHECK(expected_quality(s, SelectionVector::from_indices(2, {0})) == 1382400.0);
    CHECK(expected_quality(s, SelectionVector(2, true)) == Approx(2764800.0).epsilon(1e-15));
    CHECK_THROWS_AS(expected_quality(s, SelectionVector(3)), invalid_input);
}

TEST_CASE("objective risk equals the plain double sum") {
    const Scenario s = two_hi_cameras(0.5);
    const Matrix cov = covariance_matrix(s);
    CHECK(objective_risk(SelectionVector(2), cov) == 0.0);
    CHECK(objective_risk(SelectionVector(2, true), cov) == Approx(286654464000.0).epsilon(1e-12));

    std::mt19937_64 eng(4242);
    std::uniform_int_distribution<int> ndist(1, 10);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t n = static_cast<std::size_t>(ndist(eng));
        const Scenario rs = oracle::random_arithmetic_scenario(eng, n);
        const Matrix c = covariance_matrix(rs);
        const std::uint32_t mask = static_cast<std::uint32_t>(eng() & ((1u << n) - 1u));
        const auto alpha = SelectionVector::from_mask(n, mask);
        CHECK(objective_risk(alpha, c) == oracle::naive_risk(alpha, c));
    }
}

TEST_CASE("fitness branches") {
    Scenario s = two_hi_cameras(0.5);

    SECTION("budget violations dominate, magnitude counts the overshoot") {
        s.psi = 1;
        const auto f = fitness(s, SelectionVector(2, true));
        CHECK(f.cls == FitnessClass::InfeasibleBudget);
        CHECK(f.magnitude == 1.0);
    }
    SECTION("quality deficit magnitude is theta minus expectation") {
        // one 720p Beta(2,3) camera: expectation 368,640 against a 505,440 floor
        Scenario d;
        d.cameras.push_back({0, 1280, 720, 2.0, 3.0});
        d.rho = CorrelationMatrix::identity(1);
        d.theta = 505440.0;
        d.psi = 1;
        const auto f = fitness(d, SelectionVector(1, true));
        CHECK(f.cls == FitnessClass::QualityDeficit);
        CHECK(f.magnitude == Approx(136800.0).epsilon(1e-12));
    }
    SECTION("feasible selections score their risk") {
        const auto f = fitness(s, SelectionVector(2, true));
        CHECK(f.cls == FitnessClass::Risk);
        CHECK(f.magnitude == Approx(286654464000.0).epsilon(1e-12));
    }
    SECTION("meeting theta exactly is feasible") {
        Scenario d;
        d.cameras.push_back({0, 1920, 1080, 6.0, 3.0});
        d.rho = CorrelationMatrix::identity(1);
        d.theta = expected_resolution(d.cameras[0]); // == quality, not a deficit
        d.psi = 1;
        CHECK(fitness(d, SelectionVector(1, true)).cls == FitnessClass::Risk);
    }
    SECTION("empty selection against a positive floor is a deficit") {
        const auto f = fitness(s, SelectionVector(2));
        CHECK(f.cls == FitnessClass::QualityDeficit);
        CHECK(f.magnitude == s.theta);
    }
}
