#include <doctest.h>

#include <algorithm>

#include "dhl/error.hpp"
#include "dhl/extension.hpp"
#include "dhl/gallery.hpp"
#include "dhl/rng.hpp"

using namespace dhl;

namespace {
const ScalarKind Q = ScalarKind::rational();

GridFunction zero_bottom(const SlopedRect& R, SplitMix64& rng) {
  auto d = LShapeData::from_function(R, Q, [&](SlopedCell p) {
    return p.k2 - R.b1 <= 1 ? Scalar::zero(Q) : Scalar(rng.rational(-1, 1, 16));
  });
  return extend_lshape(d);
}
}  // namespace

TEST_SUITE("extension") {
  TEST_CASE("L-shape domain") {
    // R = [0,1]^2 has cells (0,0),(1,0),(1/2,1/2),(0,1),(1,1); S drops (1,1)
    auto S = LShapeData::domain({0, 2, 0, 2});
    CHECK(S.size() == 4);
    for (SlopedCell p : S) CHECK_FALSE(p == SlopedCell{2, 2});
  }

  TEST_CASE("one stencil") {
    const SlopedRect R{0, 2, 0, 2};
    auto d = LShapeData::from_function(R, Q, [](SlopedCell p) {
      return Scalar::from_integer(p == SlopedCell{1, 1} ? 1 : 0, Q);
    });
    auto U = extend_lshape(d);
    CHECK(U.at(SlopedCell{2, 2}) == Scalar::from_integer(4, Q));
    auto b = check_lshape_bounds(U, d);
    CHECK(b.global_ok);  // 4 <= 7^3
    CHECK(b.cellwise_ok);
  }

  TEST_CASE("constant and linear data") {
    const SlopedRect R{-3, 8, 1, 9};
    auto one = extend_lshape(LShapeData::from_function(R, Q, [](SlopedCell) { return Scalar::one(Q); }));
    for (SlopedCell p : one.sloped_cells()) CHECK(one.at(p) == Scalar::one(Q));
    auto lin = extend_lshape(LShapeData::from_function(R, Q, [](SlopedCell p) { return Scalar(Rational(p.s2, 2)); }));
    for (SlopedCell p : lin.sloped_cells()) CHECK(lin.at(p) == Scalar(Rational(p.s2, 2)));
  }

  TEST_CASE("float kind extension is harmonic to tolerance") {
    SplitMix64 rng(9);
    const ScalarKind F = ScalarKind::floating(128);
    auto d = LShapeData::from_function({0, 10, 0, 10}, F, [&](SlopedCell) { return Scalar::from_rational(rng.rational(-1, 1, 9), F); });
    auto U = extend_lshape(d);
    CHECK(is_harmonic(U, {1e-25, 1e-25}).harmonic);
  }

  TEST_CASE("half-plane construction") {
    DiagonalSeed zero{6, Q, std::vector<Scalar>(12, Scalar::zero(Q))};
    auto z = halfplane_construct(zero);
    for (Cell c : z.cells()) CHECK(z.at(c).is_zero());

    DiagonalSeed one = zero;
    one.t[0] = Scalar::one(Q);
    auto u = halfplane_construct(one);
    CHECK(is_harmonic(u).harmonic);
    for (long x = -5; x <= 5; ++x) {
      CHECK(u.at(Cell{x, x + 1}) == -u.at(Cell{x - 1, x}));
      CHECK(abs(u.at(Cell{x, x + 1})) == Scalar::one(Q));
    }
    CHECK(u.at(Cell{0, 1}) == Scalar::one(Q));
    for (std::uint64_t s = 1; s <= 5; ++s) {
      auto h = halfplane_example(10, s);
      CHECK(is_harmonic(h).harmonic);
      CHECK(portion_below(h, Scalar::zero(Q), Square{{0, 0}, 10}) >= Rational(1, 2));
    }
  }

  TEST_CASE("line polynomial degree bounds") {
    SplitMix64 rng(21);
    const SlopedRect R{0, 40, 0, 8};
    auto U = zero_bottom(R, rng);
    // k = b1 + 1: constant sign-corrected line
    auto lp = line_polynomial(U, R, R.b1 + 2);
    CHECK(lp.degree_bound == 0);
    CHECK(lp.degree <= 0);
    for (std::size_t i = 1; i < lp.values.size(); ++i) CHECK(lp.values[i] == lp.values[0]);
    for (long k2 = R.b1 + 2; k2 <= R.b2; ++k2) {
      auto l = line_polynomial(U, R, k2);
      CHECK(l.degree <= l.degree_bound);
      for (std::size_t t = 0; t < l.values.size(); ++t) CHECK(l.eval(static_cast<long>(t)) == l.values[t]);
    }
    auto zero = GridFunction::from_function(R, Q, [](SlopedCell) { return Scalar::zero(Q); });
    CHECK(line_polynomial(zero, R, R.b2).degree == -1);
  }

  TEST_CASE("line polynomial preconditions") {
    SplitMix64 rng(2);
    const SlopedRect R{0, 10, 0, 6};
    auto d = LShapeData::from_function(R, Q, [&](SlopedCell) { return Scalar(rng.rational(-1, 1, 4)); });
    CHECK_THROWS_AS(line_polynomial(extend_lshape(d), R, 4), precondition_error);
  }

  TEST_CASE("Remez bound along the top line") {
    SplitMix64 rng(33);
    for (int trial = 0; trial < 100; ++trial) {
      const SlopedRect R{0, 79, 0, 4};
      auto U = zero_bottom(R, rng);
      std::vector<Rational> top;
      for (long s = R.line_first(R.b2); s <= R.a2; s += 2) top.push_back(abs(U.at(SlopedCell{s, R.b2}).as_rational()));
      std::sort(top.begin(), top.end());
      const Rational M = top[(top.size() + 1) / 2 - 1];  // ceil(n/2) points small
      auto lb = remez_line_bound(U, R, M);
      CHECK(2 * lb.small_points >= lb.points);
      CHECK(lb.bound >= lb.actual_max);
      CHECK(lb.actual_max == top.back());
    }
    auto zero = GridFunction::from_function(SlopedRect{0, 79, 0, 4}, Q, [](SlopedCell) { return Scalar::zero(Q); });
    auto lz = remez_line_bound(zero, {0, 79, 0, 4}, 0);
    CHECK(lz.bound == 0);
    CHECK(lz.actual_max == 0);
  }
}
