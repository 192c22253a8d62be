#pragma once

#include <cmath>
#include <cstdint>

namespace spinbath {

// Counter-based RNG: every draw is a pure function of (seed, key, slot), so
// sampling is reproducible no matter how work is split across threads.
// The mixer is splitmix64's finalizer.
inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t key,
                                  std::uint64_t slot) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (2 * key + slot + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Uniform in [0,1) with 53 random bits.
inline double uniform01(std::uint64_t seed, std::uint64_t key,
                        std::uint64_t slot) {
  return static_cast<double>(counter_hash(seed, key, slot) >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller; one deterministic draw per (seed, key).
inline double standard_normal(std::uint64_t seed, std::uint64_t key) {
  const double u1 = uniform01(seed, key, 0);
  const double u2 = uniform01(seed, key, 1);
  // 1-u1 in (0,1] keeps the log finite.
  return std::sqrt(-2.0 * std::log1p(-u1)) *
         std::cos(2.0 * 3.14159265358979323846 * u2);
}

// Uniform in [lo, hi).
inline double uniform_in(std::uint64_t seed, std::uint64_t key,
                         std::uint64_t slot, double lo, double hi) {
  return lo + (hi - lo) * uniform01(seed, key, slot);
}

}  // namespace spinbath
