#include <doctest.h>

#include <cmath>
#include <utility>

#include "dhl/error.hpp"
#include "dhl/gallery.hpp"
#include "dhl/propagation.hpp"

using namespace dhl;

namespace {
const ScalarKind Q = ScalarKind::rational();
}

TEST_SUITE("propagation") {
  TEST_CASE("constant data") {
    auto one = BoundaryData::from_function(16, Q, [](Cell) { return Scalar::one(Q); });
    auto ext = analytic_extension(one, 0);
    CHECK(std::abs(ext.taylor[0] - 1.0) <= 1e-10);
    for (long n = -15; n <= 15; ++n) CHECK(std::abs(ext({n / 16.0, 0.0}) - 1.0) <= 1e-12);
    // f = 1 only on the lattice; between lattice points f - 1 is ~1e-17 and
    // the even coefficients are not zero. Reference values: 80-digit
    // evaluation of the same series, differentiated independently.
    for (std::size_t j = 1; j < ext.taylor.size(); j += 2) CHECK(std::abs(ext.taylor[j]) <= 1e-10);
    const std::pair<int, double> ref[] = {{2, 1.20161085134e-13}, {4, -5.03924291732e-11}, {6, 6.30512118463e-9},
                                          {8, -3.73599455063e-7}, {12, -2.87400243736e-4}, {20, -3.28881244405}};
    for (auto [j, v] : ref) CHECK(ext.taylor[static_cast<std::size_t>(j)].real() == doctest::Approx(v).epsilon(1e-8));
    for (std::size_t j = 0; j < ext.taylor.size(); ++j)
      CHECK(std::abs(ext.taylor[j]) * std::pow(1.0 / 32, static_cast<double>(j)) <= (j == 0 ? 1.0 : 1e-15));
    CHECK(std::abs(ext({0.3, 0.05}) - 1.0) <= 1e-10);
    // f = 1: the bound is (L r)^{d+1}
    CHECK(taylor_truncation_bound(ext, 5, 1.0 / 64) == doctest::Approx(ext.max_abs * std::pow(0.5, 6)));
    CHECK(ext.max_abs == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(taylor_truncation_bound(ext, 5, 1.0 / 32), precondition_error);
  }

  TEST_CASE("linear data") {
    const long N = 16;
    auto lin = BoundaryData::from_function(N, Q, [](Cell c) { return Scalar::from_integer(c.n, Q); });
    auto ext = analytic_extension(lin, 3);
    for (int j = -8; j <= 8; ++j) {
      const double z = j / 16.0;
      CHECK(std::abs(ext({z, 0.0}) - std::complex<double>(N * z, 0.0)) <= 1e-9);
    }
  }

  TEST_CASE("extension interpolates the solution") {
    SplitMix64 rng(16);
    const long N = 16;
    auto d = random_boundary(N, rng, "rational");
    auto u = solve_direct(d, DirectMode::ExactRational);
    for (long m0 : {0L, 5L, -7L}) {
      auto ext = analytic_extension(d, m0);
      for (long n = -N / 2 + 1; n < N / 2; ++n)
        CHECK(std::abs(ext({static_cast<double>(n) / N, 0.0}).real() - to_double(u.at(Cell{n, m0}))) <= 1e-8);
    }
  }

  TEST_CASE("Taylor truncation bound dominates the measured error") {
    SplitMix64 rng(17);
    auto d = random_boundary(16, rng, "sign");
    auto ext = analytic_extension(d, 2);
    const double r = 1.0 / 64, bound = taylor_truncation_bound(ext, 8, r);
    for (int i = 0; i < 100; ++i) {
      const double th = 2.0 * M_PI * rng.uniform01(), rad = r * rng.uniform01();
      const std::complex<double> z = std::polar(rad, th);
      CHECK(std::abs(ext(z) - ext.taylor_eval(8, z)) <= bound);
    }
    // geometric decay with ratio L r
    CHECK(taylor_truncation_bound(ext, 9, r) == doctest::Approx(0.5 * bound));
  }

  TEST_CASE("propagate on constant data") {
    auto one = BoundaryData::from_function(64, Q, [](Cell) { return Scalar::one(Q); });
    auto grid = solve_float(one, true);
    auto pts = small_points_on_line(grid, 64, 0, 1.0, 0.025);
    CHECK(pts == std::vector<long>{-1, 0, 1});
    auto r = propagate_smallness(one, 0, 1.0, 0.025, pts);
    CHECK(r.true_max == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.dominates);
    CHECK(r.certified_bound >= 1.0);
    CHECK((r.case_taken == 1) == (r.split_lhs < r.sigma));
    CHECK_FALSE(r.within_proof_regime);
  }

  TEST_CASE("propagate on zero data") {
    auto zero = BoundaryData::from_function(64, Q, [](Cell) { return Scalar::zero(Q); });
    auto r = propagate_smallness(zero, 0, 0.0, 0.025, {-1, 0, 1});
    CHECK(r.true_max == 0.0);
    CHECK(r.certified_bound >= 0.0);
    CHECK(r.dominates);
  }

  TEST_CASE("propagate preconditions") {
    SplitMix64 rng(1);
    auto d = random_boundary(64, rng, "sign");
    CHECK_THROWS_AS(propagate_smallness(d, 0, 1.0, 0.00006, {0}), precondition_error);   // J < 2
    CHECK_THROWS_AS(propagate_smallness(d, 0, 1.0, 0.05, {-1, 0, 1}), precondition_error);  // 32 gamma >= 1
    CHECK_THROWS_AS(propagate_smallness(d, 0, 1e-9, 0.025, {-1, 0, 1}), precondition_error);  // points not small
  }

  TEST_CASE("remainder composition") {
    auto c = compose_remainders({1, 0.5, 1}, {1, 0.5, 1});
    CHECK(c.beta == doctest::Approx(0.75));
    CHECK(c.C == doctest::Approx(2.0));
    CHECK(c.c == doctest::Approx(0.5));
    auto id = compose_remainders({1, 1e-6, 1}, {2, 0.4, 1});
    CHECK(std::abs(id.beta - 0.4) <= 1e-5);
    SplitMix64 rng(3);
    for (int i = 0; i < 1000; ++i) {
      RemainderParams a{1 + 4 * rng.uniform01(), 0.01 + 0.98 * rng.uniform01(), 0.1 + rng.uniform01()};
      RemainderParams b{1 + 4 * rng.uniform01(), 0.01 + 0.98 * rng.uniform01(), 0.1 + rng.uniform01()};
      const double M = std::exp(30 * rng.uniform01()), sigma = M * std::exp(-40 * rng.uniform01());
      CHECK(composition_dominates(a, b, sigma, M, static_cast<double>(rng.range(1, 100))));
    }
    CHECK_THROWS_AS(compose_remainders({1, 1.5, 1}, {1, 0.5, 1}), precondition_error);
  }

  TEST_CASE("three-square report") {
    auto flat = GridFunction::from_function(Square{{0, 0}, 16}, Q, [](Cell) { return Scalar::one(Q); });
    auto r = three_circle_report(flat, 16, Scalar::one(Q), std::nullopt);
    REQUIRE(r.alpha_hat);
    CHECK(*r.alpha_hat == doctest::Approx(0.0));
    // chelkak34: log M(r) = b r, so mid interpolates with weight 1/3 toward N
    auto u = chelkak34(40);
    const Scalar sigma = pow(Scalar(Rational(2), Rational(1), 3), 10);
    auto c = three_circle_report(u, 40, sigma, std::nullopt);
    REQUIRE(c.alpha_hat);
    CHECK(*c.alpha_hat == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
    auto h = three_circle_report(u, 40, sigma, RemainderParams{1.0, 0.5, 1.0});
    REQUIRE(h.holds);
    CHECK(*h.holds);
  }

  TEST_CASE("three-square fit on random solutions") {
    SplitMix64 rng(64);
    for (int i = 0; i < 5; ++i) {
      auto d = random_boundary(64, rng, "rational");
      auto u = solve_kernel(d);
      Scalar sigma = Scalar::zero(u.kind());
      for (long m = -16; m <= 16; ++m)
        for (long n = -16; n <= 16; ++n)
          if (compare(abs(u.at(Cell{n, m})), sigma) > 0) sigma = abs(u.at(Cell{n, m}));
      auto r = three_circle_report(u, 64, sigma, std::nullopt);
      REQUIRE(r.alpha_hat);
      CHECK(*r.alpha_hat > 0.0);
      CHECK(*r.alpha_hat < 1.0);
    }
  }
}
