#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>

#include "camfolio/camfolio.hpp"
#include "support/oracles.hpp"

using namespace camfolio;
using Catch::Approx;

TEST_CASE("identity factors to identity") {
    const CopulaFactor f = prepare_copula(CorrelationMatrix::identity(4));
    CHECK(f.repair_delta == 0.0);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(f.L.at(i, j) == (i == j ? 1.0 : 0.0));
}

TEST_CASE("closed-form 2x2 factor") {
    const CopulaFactor f = prepare_copula(CorrelationMatrix::uniform(2, 0.5));
    CHECK(f.repair_delta == 0.0);
    CHECK(f.L.at(0, 0) == Approx(1.0).epsilon(1e-15));
    CHECK(f.L.at(0, 1) == 0.0);
    CHECK(f.L.at(1, 0) == Approx(0.5).epsilon(1e-15));
    CHECK(f.L.at(1, 1) == Approx(0.8660254037844386).epsilon(1e-14));
}

TEST_CASE("PSD input is not repaired and L reproduces it") {
    std::mt19937_64 eng(31337);
    for (int rep = 0; rep < 10; ++rep) {
        const auto rho = oracle::random_psd_correlation(eng, 6, 0.05);
        const CopulaFactor f = prepare_copula(rho);
        CHECK(f.repair_delta <= 1e-12);
        // L L^T == rho up to factorization error
        for (std::size_t i = 0; i < 6; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                double acc = 0.0;
                for (std::size_t k = 0; k < 6; ++k) acc += f.L.at(i, k) * f.L.at(j, k);
                CHECK(acc == Approx(rho.at(i, j)).margin(1e-9));
            }
        }
        // lower triangular
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = i + 1; j < 6; ++j) CHECK(f.L.at(i, j) == 0.0);
    }
}

TEST_CASE("indefinite input is clipped to a valid correlation matrix") {
    // uniform off-diagonal -0.6 on 3 cameras has eigenvalue 1 + 2(-0.6) < 0
    const auto rho = CorrelationMatrix::uniform(3, -0.6);
    const CopulaFactor f = prepare_copula(rho);
    CHECK(f.repair_delta > 0.0);

    const Matrix& r = f.repaired_rho;
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(r.at(i, i) == 1.0);
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(r.at(i, j) == r.at(j, i));
            CHECK(std::abs(r.at(i, j)) <= 1.0 + 1e-12);
        }
    }
    Eigen::MatrixXd m(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m(i, j) = r.at(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    CHECK(es.eigenvalues().minCoeff() >= -1e-9);

    // the factor reproduces the repaired matrix, not the input
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < 3; ++k) acc += f.L.at(i, k) * f.L.at(j, k);
            CHECK(acc == Approx(r.at(i, j)).margin(1e-8));
        }
    }
}

TEST_CASE("rank-deficient but PSD input factors with jitter") {
    // perfectly correlated pair: PSD with a zero eigenvalue
    const auto rho = CorrelationMatrix::uniform(2, 1.0);
    const CopulaFactor f = prepare_copula(rho);
    CHECK(f.repair_delta <= 1e-9);
    double acc = 0.0;
    for (std::size_t k = 0; k < 2; ++k) acc += f.L.at(1, k) * f.L.at(0, k);
    CHECK(acc == Approx(1.0).margin(1e-6));
}
