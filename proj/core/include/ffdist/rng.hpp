#pragma once

#include <cstdint>

#include "ffdist/errors.hpp"

namespace ffdist {

/// SplitMix64 (Steele, Lea, Vigna). The generator is part of the output
/// contract: experiment tables must be reproducible from the seed alone, on
/// any platform and in any language, so platform-default randomness is out.
///
/// Draws below a bound use bitmask rejection: mask to the smallest
/// power-of-two range covering [0, n) and retry until the draw lands inside.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform draw in [0, n), n >= 1.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw usage_error("SplitMix64::below(0)");
    if (n == 1) return 0;
    std::uint64_t mask = n - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    while (true) {
      const std::uint64_t v = next() & mask;
      if (v < n) return v;
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace ffdist
