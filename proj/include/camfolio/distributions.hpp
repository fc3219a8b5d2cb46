#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "camfolio/errors.hpp"
#include "camfolio/rng.hpp"

namespace camfolio {

inline double normal_cdf(double z) {
    static const boost::math::normal_distribution<double> n01(0.0, 1.0);
    return boost::math::cdf(n01, z);
}

inline double normal_quantile(double u) {
    if (!(u > 0.0 && u < 1.0)) throw invalid_parameter("normal_quantile: u must be in (0,1)");
    static const boost::math::normal_distribution<double> n01(0.0, 1.0);
    return boost::math::quantile(n01, u);
}

// Inverse regularized incomplete beta. Result is clamped into the open unit
// interval: extreme shapes (e.g. Beta(1e6, 1)) round the true quantile to
// exactly 1.0 in double precision, which downstream code must never see.
inline double beta_quantile(double u, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw invalid_parameter("beta_quantile: shapes must be positive");
    if (!(u >= 0.0 && u <= 1.0)) throw invalid_parameter("beta_quantile: u must be in [0,1]");
    const double p = boost::math::ibeta_inv(a, b, u);
    const double lo = std::numeric_limits<double>::min();
    const double hi = std::nextafter(1.0, 0.0);
    return std::clamp(p, lo, hi);
}

inline double beta_cdf(double x, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw invalid_parameter("beta_cdf: shapes must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return boost::math::ibeta(a, b, x);
}

// Standard normal draw via inverse CDF; stateless, so parallel per-trial
// streams stay reproducible (no Box-Muller carry-over).
inline double std_normal(rng_engine& eng) {
    return normal_quantile(uniform01(eng));
}

} // namespace camfolio
