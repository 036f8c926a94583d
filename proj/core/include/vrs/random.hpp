#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace vrs {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; bijective on 64-bit words.
std::uint64_t splitmix64(std::uint64_t x);

/// Child seed for a named stream.  Streams with different names (or indices)
/// drawn from the same root are statistically independent.
std::uint64_t derive_seed(std::uint64_t root, std::string_view stream,
                          std::uint64_t index = 0);

inline Rng make_rng(std::uint64_t root, std::string_view stream,
                    std::uint64_t index = 0) {
  return Rng(derive_seed(root, stream, index));
}

/// Uniform double in [0, 1) built from the top 53 bits; unlike
/// std::uniform_real_distribution the result is identical across standard
/// library implementations.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Standard normal via Box-Muller on uniform01.
double standard_normal(Rng& rng);

/// Uniform integer in [0, n).
std::uint64_t uniform_index(Rng& rng, std::uint64_t n);

}  // namespace vrs
