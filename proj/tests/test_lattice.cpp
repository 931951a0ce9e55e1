#include <doctest.h>

#include <cmath>

#include "dhl/gallery.hpp"
#include "dhl/lattice.hpp"
#include "dhl/rng.hpp"

using namespace dhl;

namespace {
const ScalarKind Q = ScalarKind::rational();
Scalar q(long v) { return Scalar::from_integer(v, Q); }
}  // namespace

TEST_SUITE("lattice") {
  TEST_CASE("half-integer text") {
    CHECK(half_str(4) == "2");
    CHECK(half_str(-3) == "-3/2");
    CHECK(parse_half("5/2") == 5);
    CHECK(parse_half("-1.5") == -3);
    CHECK(parse_half("7") == 14);
  }

  TEST_CASE("classical harmonic polynomials") {
    auto u1 = GridFunction::from_function(Square{{0, 0}, 5}, Q, [](Cell c) { return q(c.n * c.n - c.m * c.m); });
    auto u2 = GridFunction::from_function(Square{{0, 0}, 5}, Q, [](Cell c) { return q(c.n * c.m); });
    for (long n = -4; n <= 4; ++n)
      for (long m = -4; m <= 4; ++m) {
        CHECK(laplacian_residual(u1, {n, m}).is_zero());
        CHECK(laplacian_residual(u2, {n, m}).is_zero());
      }
    CHECK(is_harmonic(u1).harmonic);
  }

  TEST_CASE("eigenfunction residual at (1,1)") {
    auto u0 = eigen2d(4);
    CHECK(laplacian_residual(u0, {1, 1}) == q(4));
  }

  TEST_CASE("n squared is not harmonic") {
    // (n+1)^2 + (n-1)^2 + 2 n^2 - 4 n^2 = 2 at every cell
    auto u = GridFunction::from_function(Square{{0, 0}, 4}, Q, [](Cell c) { return q(c.n * c.n); });
    HarmonicReport h = is_harmonic(u);
    CHECK_FALSE(h.harmonic);
    CHECK(h.checked == 49);
    for (long n = -3; n <= 3; ++n) CHECK(laplacian_residual(u, {n, 0}) == q(2));
  }

  TEST_CASE("sloped residual examples") {
    const SlopedRect R{0, 2, 0, 2};
    auto lin = GridFunction::from_function(R, Q, [](SlopedCell p) { return Scalar(Rational(p.s2, 2)); });
    auto sq = GridFunction::from_function(R, Q, [](SlopedCell p) { return Scalar(Rational(p.s2 * p.s2, 4)); });
    auto one = GridFunction::from_function(R, Q, [](SlopedCell) { return q(1); });
    CHECK(sloped_residual(lin, {0, 0}).is_zero());
    CHECK(sloped_residual(one, {0, 0}).is_zero());
    CHECK(sloped_residual(sq, {0, 0}) == q(-1));
  }

  TEST_CASE("sloped view") {
    auto u = GridFunction::from_function(Square{{0, 0}, 6}, Q, [](Cell c) { return q(c.n); });
    auto U = to_sloped(u);
    for (SlopedCell p : U.sloped_cells()) CHECK(U.at(p) == Scalar(Rational(p.s2 + p.k2, 2)));
    // harmonic in, harmonic out
    auto h = GridFunction::from_function(Square{{0, 0}, 6}, Q, [](Cell c) { return q(c.n * c.m + 3 * c.m); });
    CHECK(is_harmonic(to_sloped(h)).harmonic);
    SplitMix64 rng(3);
    auto r = GridFunction::from_function(Square{{0, 0}, 6}, Q, [&](Cell) { return Scalar(rng.rational(-5, 5, 9)); });
    auto back = from_sloped(to_sloped(r), Square{{0, 0}, 3});
    for (Cell c : back.cells()) CHECK(back.at(c) == r.at(c));
  }

  TEST_CASE("portion_below") {
    auto zero = GridFunction::from_function(Square{{0, 0}, 5}, Q, [](Cell) { return q(0); });
    CHECK(portion_below(zero, q(1), Square{{0, 0}, 5}) == 1);
    // exact count for chelkak34 on Q_10: even columns (11 of 21) plus odd columns with m <= 0
    Rational f = portion_below(chelkak34_evaluator(10), Scalar::one(chelkak_kind()), Square{{0, 0}, 10});
    CHECK(f == Rational(11 * 21 + 10 * 11, 21 * 21));
  }

  TEST_CASE("growth of chelkak34") {
    auto u = chelkak34(20);
    std::vector<long> radii;
    for (long K = 0; K <= 20; ++K) radii.push_back(K);
    GrowthProfile p = growth_profile(u, radii);
    const Scalar e(Rational(2), Rational(1), 3);
    for (long K = 1; K <= 20; ++K) CHECK(p.maxima[static_cast<std::size_t>(K)] == pow(e, static_cast<unsigned long>(K)));
    const double b = std::log(2.0 + std::sqrt(3.0));
    CHECK(fitted_slope(p, 1, 20) == doctest::Approx(b).epsilon(1e-12));
  }

  TEST_CASE("doubling labels") {
    // M = 1: neither; M(K) = K: neither; chelkak34: exponential
    GrowthProfile flat, lin;
    for (long K = 1; K <= 16; ++K) {
      flat.radii.push_back(K);
      flat.maxima.push_back(q(1));
      flat.log_maxima.push_back(0.0);
      lin.radii.push_back(K);
      lin.maxima.push_back(q(K));
      lin.log_maxima.push_back(std::log(static_cast<double>(K)));
    }
    for (const auto& r : doubling_report(flat, 1.3)) CHECK(r.label == "neither");
    for (const auto& r : doubling_report(lin, 1.3)) CHECK(r.label == "neither");
    auto u = chelkak34(16);
    std::vector<long> radii;
    for (long K = 1; K <= 16; ++K) radii.push_back(K);
    auto rows = doubling_report(growth_profile(u, radii), 1.3);
    CHECK(rows.size() == 8);
    for (const auto& r : rows) CHECK(r.label == "exponential");
  }
}
