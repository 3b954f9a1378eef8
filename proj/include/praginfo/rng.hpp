#pragma once

#include <cstdint>
#include <random>

namespace praginfo {

/// The library's one random generator. mt19937_64 is pinned by the C++
/// standard, so seeded runs reproduce bit-for-bit on any conforming
/// implementation. std::*_distribution adapters are NOT pinned and are
/// never used here; doubles come from the explicit 53-bit path below.
using rng_t = std::mt19937_64;

inline constexpr const char* kGeneratorName = "mt19937_64";

/// Uniform double in [0, 1): top 53 bits of one generator draw.
inline double unit_double(rng_t& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in (0, 1), never exactly 0 or 1; safe under log().
inline double unit_double_open(rng_t& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

}  // namespace praginfo
