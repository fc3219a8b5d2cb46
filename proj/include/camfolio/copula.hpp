#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "camfolio/matrix.hpp"
#include "camfolio/scenario.hpp"

namespace camfolio {

// Lower-triangular factor of the (possibly repaired) correlation matrix,
// plus how far the repair moved it. repair_delta == 0 means the input was
// usable as-is.
struct CopulaFactor {
    Matrix L;
    Matrix repaired_rho;
    double repair_delta = 0.0; // max |repaired - input| over all entries
};

namespace detail {

inline Eigen::MatrixXd to_eigen(const Matrix& m) {
    Eigen::MatrixXd e(m.n, m.n);
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = 0; j < m.n; ++j) e(i, j) = m.at(i, j);
    return e;
}

inline Matrix from_eigen(const Eigen::MatrixXd& e) {
    Matrix m(static_cast<std::size_t>(e.rows()));
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = 0; j < m.n; ++j) m.at(i, j) = e(i, j);
    return m;
}

} // namespace detail

// Prepares the Gaussian-copula factor for a correlation matrix.
//
// Indefinite inputs (valid entries, negative eigenvalues) are repaired by
// clipping negative eigenvalues to zero and rescaling back to a unit
// diagonal; the largest entrywise change is reported, never hidden. The
// repaired matrix is then Cholesky-factored, adding a diagonal jitter of at
// most 1e-10 when semidefiniteness makes the strict factorization fail
// (e.g. the rank-one all-ones matrix).
inline CopulaFactor prepare_copula(const CorrelationMatrix& rho) {
    const std::size_t n = rho.size();
    Eigen::MatrixXd r = detail::to_eigen(rho.to_matrix());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r);
    if (es.info() != Eigen::Success)
        throw invalid_input("prepare_copula: eigendecomposition failed");

    Eigen::MatrixXd repaired = r;
    if (es.eigenvalues().minCoeff() < 0.0) {
        Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
        repaired = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
        for (std::size_t i = 0; i < n; ++i) {
            if (!(repaired(i, i) > 0.0))
                throw invalid_input("prepare_copula: repair produced a degenerate diagonal");
        }
        Eigen::VectorXd d = repaired.diagonal().cwiseSqrt().cwiseInverse();
        repaired = d.asDiagonal() * repaired * d.asDiagonal();
        // exact symmetry and unit diagonal after rounding
        repaired = ((repaired + repaired.transpose()) / 2.0).eval();
        for (std::size_t i = 0; i < n; ++i) repaired(i, i) = 1.0;
    }

    CopulaFactor out;
    out.repaired_rho = detail::from_eigen(repaired);
    out.repair_delta = (repaired - r).cwiseAbs().maxCoeff();

    for (double jitter : {0.0, 1e-12, 1e-10}) {
        Eigen::MatrixXd j = repaired;
        j.diagonal().array() += jitter;
        Eigen::LLT<Eigen::MatrixXd> llt(j);
        if (llt.info() == Eigen::Success) {
            out.L = detail::from_eigen(Eigen::MatrixXd(llt.matrixL()));
            return out;
        }
    }
    throw invalid_input("prepare_copula: Cholesky failed even with diagonal jitter 1e-10");
}

} // namespace camfolio
