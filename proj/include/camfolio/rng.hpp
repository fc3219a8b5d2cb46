#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace camfolio {

// splitmix64 finalizer; good avalanche, cheap, stateless.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Derives an independent stream seed from a master seed and a path of ids.
// Counter-based: derive(seed, {tag, t}) for trial t never touches the draws
// of any other trial, so trials can run in any order or in parallel.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = mix64(master);
    for (std::uint64_t id : path) s = mix64(s ^ (id + 0x632BE59BD9B4E019ULL));
    return s;
}

// Fixed stream tags so seed derivations stay stable across code motion.
namespace stream {
inline constexpr std::uint64_t ga = 0x6761;       // "ga"
inline constexpr std::uint64_t trials = 0x7472;   // "tr"
inline constexpr std::uint64_t sweep = 0x7377;    // "sw"
inline constexpr std::uint64_t init = 0x696E;     // "in"
} // namespace stream

using rng_engine = std::mt19937_64;

inline rng_engine make_engine(std::uint64_t seed) { return rng_engine(mix64(seed)); }

// Uniform double in the open interval (0, 1): 53-bit mantissa, half-ulp
// offset keeps both endpoints unreachable.
inline double uniform01(rng_engine& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

// Uniform integer in [0, n). Mapping through the 53-bit uniform keeps the
// draw sequence engine-portable; the O(n * 2^-53) bias is irrelevant here.
inline std::size_t uniform_index(rng_engine& eng, std::size_t n) {
    return static_cast<std::size_t>(uniform01(eng) * static_cast<double>(n));
}

} // namespace camfolio
