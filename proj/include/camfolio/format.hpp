#pragma once

#include <charconv>
#include <string>

namespace camfolio {

// Shortest decimal form that round-trips the exact double. Locale-independent,
// so CSV and table output stays byte-stable across runs, thread counts, and
// host locales.
inline std::string fmt_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace camfolio
