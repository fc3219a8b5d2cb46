#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "camfolio/errors.hpp"
#include "camfolio/matrix.hpp"

namespace camfolio {

// One capture device: sensor size plus the Beta(a, b) law of its
// availability (the probability that the camera is not disrupted).
struct CameraSpec {
    int id = 0;
    int width = 0;
    int height = 0;
    double beta_a = 0.0;
    double beta_b = 0.0;

    // Pixel count; derived, never stored.
    double resolution() const { return static_cast<double>(width) * static_cast<double>(height); }
};

inline void validate_camera(const CameraSpec& c) {
    const std::string who = "camera " + std::to_string(c.id);
    if (c.width <= 0 || c.height <= 0)
        throw invalid_parameter(who + ": width/height must be positive integers");
    if (!(c.beta_a > 0.0))
        throw invalid_parameter(who + ": beta_a must be > 0, got " + std::to_string(c.beta_a));
    if (!(c.beta_b > 0.0))
        throw invalid_parameter(who + ": beta_b must be > 0, got " + std::to_string(c.beta_b));
}

struct BetaMoments {
    double mean = 0.0;
    double stddev = 0.0;
};

// Closed-form Beta moments: mean a/(a+b), variance ab/((a+b)^2 (a+b+1)).
inline BetaMoments beta_moments(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw invalid_parameter("beta_moments: shapes must be positive");
    const double s = a + b;
    BetaMoments m;
    m.mean = a / s;
    m.stddev = std::sqrt(a * b / (s * s * (s + 1.0)));
    return m;
}

// Symmetric correlation matrix with unit diagonal, entries in [-1, 1].
// Positive semidefiniteness is NOT enforced here; the copula layer repairs
// (and reports) indefinite inputs before sampling.
class CorrelationMatrix {
  public:
    CorrelationMatrix() = default;

    explicit CorrelationMatrix(const Matrix& m) : n_(m.n), v_(m.a) { validate(); }

    static CorrelationMatrix identity(std::size_t n) {
        Matrix m(n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return CorrelationMatrix(m);
    }

    static CorrelationMatrix uniform(std::size_t n, double off_diag) {
        Matrix m(n, off_diag);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return CorrelationMatrix(m);
    }

    std::size_t size() const { return n_; }
    double at(std::size_t i, std::size_t j) const { return v_[i * n_ + j]; }

    // Mutate one symmetric pair; keeps the invariants checked.
    void set(std::size_t i, std::size_t j, double r) {
        if (i == j) throw invalid_input("CorrelationMatrix::set: diagonal is fixed at 1");
        if (!(r >= -1.0 && r <= 1.0))
            throw invalid_parameter("CorrelationMatrix::set: entry out of [-1,1]: " + std::to_string(r));
        v_[i * n_ + j] = r;
        v_[j * n_ + i] = r;
    }

    Matrix to_matrix() const {
        Matrix m(n_);
        m.a = v_;
        return m;
    }

  private:
    void validate() const {
        if (n_ == 0) throw invalid_input("CorrelationMatrix: empty");
        for (std::size_t i = 0; i < n_; ++i) {
            if (v_[i * n_ + i] != 1.0)
                throw invalid_input("CorrelationMatrix: diagonal entry (" + std::to_string(i) + "," +
                                    std::to_string(i) + ") must be exactly 1");
            for (std::size_t j = 0; j < n_; ++j) {
                const double r = v_[i * n_ + j];
                if (!(r >= -1.0 && r <= 1.0))
                    throw invalid_parameter("CorrelationMatrix: entry (" + std::to_string(i) + "," +
                                            std::to_string(j) + ") out of [-1,1]: " + std::to_string(r));
                if (v_[i * n_ + j] != v_[j * n_ + i])
                    throw invalid_input("CorrelationMatrix: not symmetric at (" + std::to_string(i) + "," +
                                        std::to_string(j) + ")");
            }
        }
    }

    std::size_t n_ = 0;
    std::vector<double> v_;
};

// Full problem instance: cameras, their correlation structure, the expected
// quality floor theta (pixels), the selection budget psi, and simulation
// defaults (trial count, master seed).
struct Scenario {
    std::vector<CameraSpec> cameras;
    CorrelationMatrix rho;
    double theta = 0.0;
    int psi = 0;
    int trials = 20;
    std::uint64_t master_seed = 0;

    std::size_t size() const { return cameras.size(); }
};

inline void validate_scenario(const Scenario& s) {
    const std::size_t n = s.cameras.size();
    if (n == 0) throw invalid_input("scenario: needs at least one camera");
    for (std::size_t i = 0; i < n; ++i) {
        if (s.cameras[i].id != static_cast<int>(i))
            throw invalid_input("scenario: camera ids must be 0..N-1 in order");
        validate_camera(s.cameras[i]);
    }
    if (s.rho.size() != n)
        throw invalid_input("scenario: rho is " + std::to_string(s.rho.size()) + "x" +
                            std::to_string(s.rho.size()) + " but there are " + std::to_string(n) + " cameras");
    if (!(s.theta >= 0.0)) throw invalid_parameter("scenario: theta must be >= 0");
    if (s.psi <= 0 || s.psi > static_cast<int>(n))
        throw invalid_parameter("scenario: psi must satisfy 0 < psi <= N, got " + std::to_string(s.psi));
    if (s.trials <= 0) throw invalid_parameter("scenario: trials must be positive");
}

// E[R_i] = R_i * E[p_i]; the contribution of camera i to expected quality.
inline double expected_resolution(const CameraSpec& c) {
    return c.resolution() * beta_moments(c.beta_a, c.beta_b).mean;
}

// cov(R_i, R_j) = R_i R_j sigma_i sigma_j rho_ij.
inline double covariance(const CameraSpec& ci, const CameraSpec& cj, double rho_ij) {
    if (!(rho_ij >= -1.0 && rho_ij <= 1.0))
        throw invalid_parameter("covariance: rho out of [-1,1]: " + std::to_string(rho_ij));
    const double si = beta_moments(ci.beta_a, ci.beta_b).stddev;
    const double sj = beta_moments(cj.beta_a, cj.beta_b).stddev;
    return ci.resolution() * cj.resolution() * si * sj * rho_ij;
}

// Full covariance matrix. Built on the upper triangle and mirrored, so the
// result is bitwise symmetric. Congruence D rho D with D = diag(R_i sigma_i);
// PSD whenever rho is.
inline Matrix covariance_matrix(const Scenario& s) {
    const std::size_t n = s.size();
    Matrix c(n);
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i)
        d[i] = s.cameras[i].resolution() * beta_moments(s.cameras[i].beta_a, s.cameras[i].beta_b).stddev;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double v = d[i] * d[j] * s.rho.at(i, j);
            c.at(i, j) = v;
            c.at(j, i) = v;
        }
    }
    return c;
}

} // namespace camfolio
