#pragma once

#include <cstdint>

#include "kap/rational.hpp"

namespace kap {

/**
 * Deterministic, platform-independent RNG (splitmix64). All randomized
 * behavior in the library is a pure function of the seed fed in here;
 * std distributions are avoided because their output is
 * implementation-defined.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [lo, hi], inclusive. Rejection-sampled, unbiased.
  long range(long lo, long hi) {
    KAP_CHECK(lo <= hi, "rng range");
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return lo + static_cast<long>(x % span);
  }

  bool chance(long num, long den) { return range(1, den) <= num; }

  Rat small_rational(long max_num = 24, long max_den = 8) {
    return Rat(range(-max_num, max_num), range(1, max_den));
  }

 private:
  std::uint64_t state_;
};

/// Per-trial seed derivation used by seeded batch drivers: splitmix64 of
/// (seed + trial index), documented so reports are reproducible elsewhere.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  Rng r(seed + index);
  return r.next_u64();
}

}  // namespace kap
