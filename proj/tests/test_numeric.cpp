#include <doctest.h>

#include <cmath>

#include "dhl/error.hpp"
#include "dhl/numeric.hpp"
#include "dhl/rng.hpp"

using namespace dhl;

TEST_SUITE("numeric") {
  TEST_CASE("rational parse") {
    Scalar q = parse_scalar("3/7", ScalarKind::rational());
    CHECK(q.as_rational() == Rational(3, 7));
    CHECK(parse_scalar("6/14", ScalarKind::rational()).str() == "3/7");
    CHECK_THROWS_AS(parse_scalar("1/0", ScalarKind::rational()), precondition_error);
    CHECK_THROWS(parse_scalar("abc", ScalarKind::rational()));
  }

  TEST_CASE("quadratic parse and arithmetic") {
    const ScalarKind k3 = ScalarKind::quadratic(3);
    Scalar x = parse_scalar("2+1*sqrt(3)", k3);
    CHECK(x.as_quadratic().x == 2);
    CHECK(x.as_quadratic().y == 1);
    // (2 + sqrt3)(2 - sqrt3) = 1
    Scalar y(Rational(2), Rational(-1), 3);
    CHECK(x * y == Scalar::one(k3));
    CHECK(parse_scalar(x.str(), k3) == x);
    CHECK_THROWS(ScalarKind::quadratic(4));  // not square-free
  }

  TEST_CASE("mixing kinds throws") {
    Scalar a = Scalar::one(ScalarKind::rational());
    Scalar b = Scalar::one(ScalarKind::floating(64));
    CHECK_THROWS(a + b);
  }

  TEST_CASE("to_float rounding") {
    CHECK(to_double(to_float(Scalar(Rational(1, 4)), 53)) == 0.25);
    CHECK(to_double(to_float(Scalar(Rational(1, 3)), 53)) == 1.0 / 3.0);
    // 2 + sqrt3 = 3.7320508075688772935...; nearest double printed to 17 digits
    double v = to_double(to_float(Scalar(Rational(2), Rational(1), 3), 53));
    CHECK(v == 3.7320508075688772);
    CHECK(v == 2.0 + std::sqrt(3.0));
  }

  TEST_CASE("quadratic comparison is exact") {
    const ScalarKind k3 = ScalarKind::quadratic(3);
    // 1351/780 is a convergent of sqrt3 from above, 989/571 from below
    Scalar s(Rational(0), Rational(1), 3);
    CHECK(compare(s, Scalar::from_rational(Rational(1351, 780), k3)) < 0);
    CHECK(compare(s, Scalar::from_rational(Rational(989, 571), k3)) > 0);
    CHECK(abs_le(Scalar(Rational(2), Rational(-1), 3), Scalar::one(k3)));
  }

  TEST_CASE("log_abs of huge values") {
    Scalar big = pow(Scalar(Rational(2), Rational(1), 3), 1000);
    CHECK(log_abs(big) == doctest::Approx(1000.0 * std::log(2.0 + std::sqrt(3.0))).epsilon(1e-12));
    CHECK(std::isinf(log_abs(Scalar::zero(ScalarKind::rational()))));
  }

  TEST_CASE("splitmix64 reference stream") {
    // published first outputs for seed 0
    SplitMix64 r(0);
    CHECK(r.next() == 0xe220a8397b1dcdafULL);
    CHECK(r.next() == 0x6e789e6aa1b965f4ULL);
    CHECK(r.next() == 0x06c45d188009454fULL);
  }

  TEST_CASE("rng rational range") {
    SplitMix64 r(5);
    for (int i = 0; i < 1000; ++i) {
      Rational q = r.rational(-1, 1, 16);
      CHECK(q >= -1);
      CHECK(q <= 1);
      CHECK(q.get_den() <= 16);
    }
  }
}
