#include <doctest.h>

#include "dhl/error.hpp"
#include "dhl/remez.hpp"
#include "dhl/rng.hpp"

using namespace dhl;

namespace {
Polynomial P(std::vector<Rational> c) { return Polynomial(std::move(c)); }
}  // namespace

TEST_SUITE("remez") {
  TEST_CASE("parse and evaluate") {
    Polynomial p = Polynomial::parse("1,-3/2,0,2");
    CHECK(p.degree() == 3);
    CHECK(p.eval(Rational(2)) == Rational(1 - 3 + 16));
    CHECK(Polynomial::parse("0,0").is_zero());
    CHECK(p.derivative().eval(Rational(1)) == Rational(-3, 2) + 6);
  }

  TEST_CASE("poly_max examples") {
    PolyMax a = poly_max(P({0, 1}), {0, 1});
    CHECK(a.attained == 1);
    CHECK(a.argmax == 1);
    CHECK(a.certified_upper >= 1);
    CHECK(a.certified_upper - 1 <= Rational(1, 1000000));
    // Chebyshev T2 = 2x^2 - 1 equioscillates at -1, 0, 1
    PolyMax t = poly_max(P({-1, 0, 2}), {-1, 1});
    CHECK(t.attained == 1);
    CHECK(t.certified_upper >= 1);
    CHECK(t.certified_upper - 1 <= Rational(1, 1000000));
    PolyMax c = poly_max(P({5}), {-3, 7});
    CHECK(c.attained == 5);
    CHECK(c.certified_upper == 5);
  }

  TEST_CASE("poly_max against dense sampling") {
    SplitMix64 rng(12);
    for (int i = 0; i < 200; ++i) {
      std::vector<Rational> c(static_cast<std::size_t>(rng.range(1, 9)));
      for (auto& x : c) x = rng.rational(-3, 3, 7);
      Polynomial p(c);
      Interval I{rng.rational(-2, 0, 5), rng.rational(0, 2, 5)};
      if (I.lo == I.hi) continue;
      PolyMax m = poly_max(p, I);
      CHECK(m.attained <= m.certified_upper);
      for (int j = 0; j <= 200; ++j) {
        Rational x = I.lo + I.length() * Rational(j, 200);
        CHECK(abs(p.eval(x)) <= m.certified_upper);
      }
    }
  }

  TEST_CASE("continuous Remez examples") {
    Rational b = remez_bound(P({0, 1}), {0, 1}, {{0, Rational(1, 2)}}, Rational(1, 2));
    CHECK(b == 4);
    // T2 on [-1,1] with E = [-1,0]: (4*2/1)^2 * 1 = 64
    CHECK(remez_bound(P({-1, 0, 2}), {-1, 1}, {{-1, 0}}, 1) == 64);
    CHECK(remez_bound(P({3}), {0, 5}, {{1, 2}}, 3) == 3);
  }

  TEST_CASE("discrete Remez examples") {
    std::vector<Rational> pts{0, 1, 2, 3, 4, 5};
    CHECK(remez_bound_discrete(P({0, 0, 1}), {0, 10}, pts, 25) == 2500);
    CHECK(discrete_remez_factor(2, 10, 4) == 100);
    // linear through the two endpoints, l = 1: 4|I| M
    CHECK(remez_bound_discrete(P({1, 2}), {0, 3}, {0, 3}, 7) == 4 * 3 * 7);
    CHECK(remez_bound_discrete(P({9}), {0, 3}, {1}, 9) == 9);
  }

  TEST_CASE("discrete Remez preconditions") {
    CHECK_THROWS_AS(remez_bound_discrete(P({0, 0, 1}), {0, 10}, {0, 1}, 1), precondition_error);  // l = 0
    CHECK_THROWS_AS(remez_bound_discrete(P({0, 1}), {0, 10}, {0, 0, 1}, 1), precondition_error);  // duplicate
    CHECK_THROWS_AS(remez_bound_discrete(P({0, 1}), {0, 10}, {0, 11}, 1), precondition_error);    // outside I
  }
}
