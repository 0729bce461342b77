#pragma once

#include <cstdint>

namespace bolforge {

/// Counter-based splitmix64. Output i is a pure function of (seed, i), so
/// sampling work can be split across workers with byte-identical results.
/// Constants are part of the file-format contract (see README).
struct SplitMix64 {
  std::uint64_t seed = 1;

  std::uint64_t at(std::uint64_t i) const {
    std::uint64_t z = seed + (i + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// at(i) reduced mod n (n < 2^32, bias negligible and fully specified).
  std::uint64_t at_mod(std::uint64_t i, std::uint64_t n) const {
    return at(i) % n;
  }
};

} // namespace bolforge
