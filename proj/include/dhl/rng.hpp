#pragma once

// SplitMix64 (Steele, Lea, Flood 2014), counter based:
//   state += 0x9e3779b97f4a7c15
//   z = state
//   z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//   z = (z ^ (z >> 27)) * 0x94d049bb133111eb
//   return z ^ (z >> 31)
// Derived draws are specified below so streams can be reproduced elsewhere.

#include <cstdint>

#include "dhl/numeric.hpp"

namespace dhl {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform in [0, n) by rejection of the top partial block; n > 0.
  std::uint64_t below(std::uint64_t n);
  /// Uniform integer in [lo, hi].
  long range(long lo, long hi);
  /// (next() >> 11) * 2^-53, in [0, 1).
  double uniform01();
  /// p/q with q uniform in [1, max_den] and p uniform so that p/q lies in [lo, hi].
  Rational rational(long lo, long hi, long max_den);
  /// +1 or -1 with equal probability (low bit of next()).
  int sign();

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace dhl
