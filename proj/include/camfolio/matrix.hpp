#pragma once

#include <cstddef>
#include <vector>

#include "camfolio/errors.hpp"

namespace camfolio {

// Small dense square matrix, row-major.
struct Matrix {
    std::size_t n = 0;
    std::vector<double> a;

    Matrix() = default;
    explicit Matrix(std::size_t dim, double fill = 0.0) : n(dim), a(dim * dim, fill) {}

    double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

} // namespace camfolio
