#pragma once

#include <stdexcept>
#include <string>

namespace camfolio {

// Bad argument to a math-layer operation (shape <= 0, |rho| > 1, ...).
struct invalid_parameter : std::invalid_argument {
    explicit invalid_parameter(const std::string& msg) : std::invalid_argument(msg) {}
};

// Structurally bad input (dimension mismatch, out-of-range index, bad file).
struct invalid_input : std::invalid_argument {
    explicit invalid_input(const std::string& msg) : std::invalid_argument(msg) {}
};

// Problem size exceeds a hard guard (e.g. exhaustive enumeration bound).
struct capacity_error : std::runtime_error {
    explicit capacity_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Strict table-driven quality lookup missed; message names the subset.
struct missing_subset_error : std::runtime_error {
    explicit missing_subset_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Least-squares fit has fewer observations than parameters.
struct underdetermined_error : std::runtime_error {
    explicit underdetermined_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Config file missing/invalid; message names the offending field.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Output file could not be opened or written.
struct io_error : std::runtime_error {
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace camfolio
