#include "dhl/gallery.hpp"

#include <cmath>
#include <memory>

#include "dhl/error.hpp"

namespace dhl {

namespace {

int quarter_sine(long n) {
  switch (((n % 4) + 4) % 4) {
    case 1:
      return 1;
    case 3:
      return -1;
    default:
      return 0;
  }
}

Scalar unit_power(const Rational& x, const Rational& y, long d, long m) {
  Scalar base = m >= 0 ? Scalar(x, y, d) : Scalar(x, Rational(-y), d);
  return pow(base, static_cast<unsigned long>(std::labs(m)));
}

}  // namespace

Grid3Function::Grid3Function(long lo, long side, const ScalarKind& kind) : lo_(lo), side_(side), kind_(kind) {
  require(side >= 1 && side <= 400, "cube side must be in [1, 400]");
  values_.assign(static_cast<std::size_t>(side * side * side), Scalar::zero(kind));
}

bool Grid3Function::in_window(long x, long y, long z) const {
  auto in = [&](long v) { return v >= lo_ && v < lo_ + side_; };
  return in(x) && in(y) && in(z);
}

std::size_t Grid3Function::index(long x, long y, long z) const {
  require(in_window(x, y, z), "cell outside the cube");
  return static_cast<std::size_t>(((z - lo_) * side_ + (y - lo_)) * side_ + (x - lo_));
}

const Scalar& Grid3Function::at(long x, long y, long z) const { return values_[index(x, y, z)]; }

void Grid3Function::set(long x, long y, long z, Scalar v) {
  require(v.kind() == kind_ || (kind_.tag() == ScalarKind::Tag::Quadratic && v.kind() == ScalarKind::rational()),
          "value kind differs from the cube kind");
  values_[index(x, y, z)] = std::move(v);
}

Scalar residual3(const Grid3Function& u, long x, long y, long z) {
  require(u.in_window(x - 1, y - 1, z - 1) && u.in_window(x + 1, y + 1, z + 1), "cell too close to the cube edge");
  Scalar acc = u.at(x + 1, y, z) + u.at(x - 1, y, z) + u.at(x, y + 1, z) + u.at(x, y - 1, z) + u.at(x, y, z + 1) +
               u.at(x, y, z - 1);
  acc -= Scalar::from_integer(6, u.kind()) * u.at(x, y, z);
  return acc;
}

ScalarKind chelkak_kind() { return ScalarKind::quadratic(3); }
ScalarKind lift_kind() { return ScalarKind::quadratic(2); }

Scalar chelkak34_value(Cell c) {
  int s = quarter_sine(c.n);
  if (s == 0) return Scalar(Rational(0), Rational(0), 3);
  Scalar p = unit_power(2, 1, 3, c.m);
  return s > 0 ? p : -p;
}

std::function<Scalar(Cell)> chelkak34_evaluator(long radius) {
  require(radius >= 0, "radius must be nonnegative");
  auto pw = std::make_shared<std::vector<Scalar>>();
  for (long m = -radius; m <= radius; ++m) pw->push_back(unit_power(2, 1, 3, m));
  auto neg = std::make_shared<std::vector<Scalar>>();
  for (const auto& v : *pw) neg->push_back(-v);
  const Scalar zero(Rational(0), Rational(0), 3);
  return [pw, neg, radius, zero](Cell c) -> Scalar {
    if (std::labs(c.m) > radius) return chelkak34_value(c);
    int s = quarter_sine(c.n);
    if (s == 0) return zero;
    const auto i = static_cast<std::size_t>(c.m + radius);
    return s > 0 ? (*pw)[i] : (*neg)[i];
  };
}

GridFunction chelkak34(long N) {
  require(N >= 0 && N <= 2000, "window radius must be in [0, 2000]");
  return GridFunction::from_function(Square{{0, 0}, N}, chelkak_kind(), chelkak34_evaluator(N));
}

GridFunction eigen2d(long N) {
  require(N >= 0, "window radius must be nonnegative");
  return GridFunction::from_function(Square{{0, 0}, N}, ScalarKind::rational(), [](Cell c) {
    if (c.n != c.m) return Scalar(Rational(0));
    return Scalar(Rational((c.n & 1L) ? -1 : 1));
  });
}

Grid3Function lift3d(long lo, long side) {
  const ScalarKind kind = lift_kind();
  Grid3Function u(lo, side, kind);
  for (long z = lo; z < lo + side; ++z) {
    Scalar cz = unit_power(3, 2, 2, z);
    for (long x = lo; x < lo + side; ++x) u.set(x, x, z, (x & 1L) ? -cz : cz);
  }
  return u;
}

DiagonalSeed random_diagonal_seed(long N, SplitMix64& rng) {
  DiagonalSeed seed;
  seed.N = N;
  seed.kind = ScalarKind::rational();
  for (long d = 1; d <= 2 * N; ++d) seed.t.push_back(Scalar(rng.rational(-1, 1, 16)));
  return seed;
}

GridFunction halfplane_example(long N, std::uint64_t seed) {
  SplitMix64 rng(seed);
  return halfplane_construct(random_diagonal_seed(N, rng));
}

Example build_example(const ExampleSpec& spec) {
  require(spec.N >= 1, "window radius must be at least 1");
  if (spec.name == "chelkak34") return chelkak34(spec.N);
  if (spec.name == "eigen2d") return eigen2d(spec.N);
  if (spec.name == "lift3d") return lift3d(-spec.N, 2 * spec.N + 1);
  if (spec.name == "halfplane") return halfplane_example(spec.N, spec.seed);
  throw precondition_error("unknown example '" + spec.name + "'");
}

bool check_eigen(const GridFunction& u0, const Scalar& lambda, const ToleranceProfile& tol) {
  require(u0.coords() == Coords::Standard, "check_eigen needs a standard grid");
  const Square& W = u0.square();
  bool any = false;
  for (Cell c : u0.cells()) {
    Cell nb[4] = {{c.n + 1, c.m}, {c.n - 1, c.m}, {c.n, c.m + 1}, {c.n, c.m - 1}};
    bool ok = u0.is_set(c);
    for (Cell q : nb) ok = ok && W.contains(q) && u0.is_set(q);
    if (!ok) continue;
    any = true;
    Scalar diff = laplacian_residual(u0, c) - lambda * u0.at(c);
    if (u0.kind().exact()) {
      if (!diff.is_zero()) return false;
    } else if (!tol.accepts(to_double(diff), to_double(abs(u0.at(c))) + 1.0)) {
      return false;
    }
  }
  require(any, "no interior cell to check");
  return true;
}

}  // namespace dhl
