#include <doctest.h>

#include "dhl/gallery.hpp"

using namespace dhl;

TEST_SUITE("gallery") {
  TEST_CASE("chelkak34 values") {
    const Scalar e(Rational(2), Rational(1), 3);
    CHECK(chelkak34_value({1, 1}) == e);
    CHECK(chelkak34_value({1, 0}) == Scalar::one(chelkak_kind()));
    CHECK(chelkak34_value({3, 2}) == -(e * e));
    CHECK(chelkak34_value({1, -1}) == Scalar(Rational(2), Rational(-1), 3));
    for (long m = -5; m <= 5; ++m) CHECK(chelkak34_value({4, m}).is_zero());
    auto ev = chelkak34_evaluator(30);
    for (long n = -30; n <= 30; n += 7)
      for (long m = -30; m <= 30; m += 3) CHECK(ev({n, m}) == chelkak34_value({n, m}));
  }

  TEST_CASE("chelkak34 is harmonic in Q(sqrt3)") {
    auto u = chelkak34(20);
    auto h = is_harmonic(u);
    CHECK(h.harmonic);
    CHECK(h.worst == 0.0);
    CHECK(u.kind() == ScalarKind::quadratic(3));
  }

  TEST_CASE("eigen2d") {
    auto u0 = eigen2d(10);
    const ScalarKind Q = ScalarKind::rational();
    CHECK(check_eigen(u0, Scalar::from_integer(-4, Q)));
    CHECK_FALSE(check_eigen(u0, Scalar::zero(Q)));
    auto one = GridFunction::from_function(Square{{0, 0}, 5}, Q, [&](Cell) { return Scalar::one(Q); });
    CHECK(check_eigen(one, Scalar::zero(Q)));
  }

  TEST_CASE("lift3d") {
    auto g = lift3d(-3, 7);
    const Scalar c(Rational(3), Rational(2), 2);
    CHECK(g.at(1, 1, 1) == -c);
    CHECK(g.at(0, 0, 0) == Scalar::one(lift_kind()));
    CHECK(g.at(1, 2, 0).is_zero());
    for (long z = -2; z <= 2; ++z)
      for (long y = -2; y <= 2; ++y)
        for (long x = -2; x <= 2; ++x) CHECK(residual3(g, x, y, z).is_zero());
  }

  TEST_CASE("residual3 of simple functions") {
    const ScalarKind Q = ScalarKind::rational();
    Grid3Function one(0, 3, Q), sq(0, 3, Q);
    for (long z = 0; z < 3; ++z)
      for (long y = 0; y < 3; ++y)
        for (long x = 0; x < 3; ++x) {
          one.set(x, y, z, Scalar::one(Q));
          sq.set(x, y, z, Scalar::from_integer(z * z, Q));
        }
    CHECK(residual3(one, 1, 1, 1).is_zero());
    CHECK(residual3(sq, 1, 1, 1) == Scalar::from_integer(2, Q));
  }

  TEST_CASE("examples are reproducible from the seed") {
    CHECK(halfplane_example(8, 3) == halfplane_example(8, 3));
    CHECK_FALSE(halfplane_example(8, 3) == halfplane_example(8, 4));
    auto ex = build_example({"eigen2d", 4, 1});
    CHECK(std::holds_alternative<GridFunction>(ex));
    CHECK(std::holds_alternative<Grid3Function>(build_example({"lift3d", 2, 1})));
    CHECK_THROWS(build_example({"nope", 4, 1}));
  }
}
