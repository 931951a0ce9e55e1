#include "dhl/rng.hpp"

#include "dhl/error.hpp"

namespace dhl {

std::uint64_t SplitMix64::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t n) {
  require(n > 0, "SplitMix64::below needs n > 0");
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n + 1) % n;
  for (;;) {
    std::uint64_t x = next();
    if (x <= limit) return x % n;
  }
}

long SplitMix64::range(long lo, long hi) {
  require(lo <= hi, "SplitMix64::range needs lo <= hi");
  auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(below(span));
}

double SplitMix64::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

Rational SplitMix64::rational(long lo, long hi, long max_den) {
  require(max_den >= 1, "max_den must be positive");
  long q = range(1, max_den);
  long p = range(lo * q, hi * q);
  Rational r(p, q);
  r.canonicalize();
  return r;
}

int SplitMix64::sign() { return (next() & 1ULL) ? 1 : -1; }

}  // namespace dhl
