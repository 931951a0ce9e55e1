#include <doctest.h>

#include <cmath>

#include "dhl/dirichlet.hpp"
#include "dhl/error.hpp"

using namespace dhl;
using kernels::Exec;

namespace {
const ScalarKind Q = ScalarKind::rational();

double max_dev(const GridFunction& a, const GridFunction& b) {
  double d = 0.0;
  for (Cell c : a.cells())
    if (a.is_set(c)) d = std::max(d, std::abs(to_double(a.at(c)) - to_double(b.at(c))));
  return d;
}
}  // namespace

TEST_SUITE("dirichlet") {
  TEST_CASE("a_k values") {
    const double b = std::log(2.0 + std::sqrt(3.0));
    CHECK(compute_ak(2, 2) == doctest::Approx(b).epsilon(1e-15));
    CHECK(compute_ak(2, 2) == doctest::Approx(1.3169578969).epsilon(1e-10));
    const double a1 = compute_ak(2, 1);
    CHECK(std::cosh(a1) == doctest::Approx(2.0 - std::sqrt(2.0) / 2.0).epsilon(1e-14));
    CHECK(a1 == doctest::Approx(0.7478194016).epsilon(1e-10));
    BigFloat mp = compute_ak_mp(2, 2, 200);
    CHECK(mpfr_get_d(mp.get(), MPFR_RNDN) == doctest::Approx(b).epsilon(1e-15));
  }

  TEST_CASE("kernel at N=1") {
    auto t = build_kernel_table(1);
    REQUIRE(t.values.size() == 4);
    for (double v : t.values) CHECK(v == doctest::Approx(0.25).epsilon(1e-13));
    for (Cell y : BoundaryData::boundary_cells(1)) CHECK(kernel_value(1, {0, 0}, y) == doctest::Approx(0.25));
  }

  TEST_CASE("row sum at N=16 and positivity at N=8") {
    double sum = 0.0;
    for (Cell y : BoundaryData::boundary_cells(16)) sum += kernel_value(16, {0, 0}, y);
    CHECK(std::abs(sum - 1.0) <= 1e-10);
    auto t = build_kernel_table(8);
    for (double v : t.values) CHECK(v > 0.0);
  }

  TEST_CASE("dihedral symmetry at N=4") {
    const long N = 4;
    for (Cell y : BoundaryData::boundary_cells(N)) {
      const double p = kernel_value(N, {0, 0}, y);
      const Cell images[] = {{-y.n, y.m}, {y.n, -y.m}, {y.m, y.n}, {-y.m, -y.n}, {-y.n, -y.m}, {y.m, -y.n}, {-y.m, y.n}};
      for (Cell z : images) CHECK(kernel_value(N, {0, 0}, z) == doctest::Approx(p).epsilon(1e-14));
    }
    // off-centre: reflection m -> -m maps P((n,m),y) to P((n,-m),y')
    for (Cell y : BoundaryData::boundary_cells(N))
      CHECK(kernel_value(N, {1, 2}, y) == doctest::Approx(kernel_value(N, {1, -2}, Cell{y.n, -y.m})).epsilon(1e-13));
  }

  TEST_CASE("table and factorised kernel sums agree serial vs parallel") {
    SplitMix64 rng(4);
    auto d = random_boundary(12, rng, "rational");
    auto s = solve_kernel(d, Exec::Serial);
    auto p = solve_kernel(d, Exec::Parallel);
    CHECK(s == p);
    CHECK(max_dev(s, solve_kernel_table(d, build_kernel_table(12))) <= 1e-12);
    auto ts = build_kernel_table(9, Exec::Serial), tp = build_kernel_table(9, Exec::Parallel);
    CHECK(ts.values == tp.values);
  }

  TEST_CASE("constant and polynomial data") {
    auto one = BoundaryData::from_function(6, Q, [](Cell) { return Scalar::one(Q); });
    auto u = solve_kernel(one);
    for (Cell c : u.cells())
      if (u.is_set(c)) CHECK(to_double(u.at(c)) == doctest::Approx(1.0).epsilon(1e-12));
    auto ex = solve_direct(one, DirectMode::ExactRational);
    for (Cell c : ex.cells())
      if (ex.is_set(c)) CHECK(ex.at(c) == Scalar::one(Q));
    auto h = BoundaryData::from_function(8, Q, [](Cell c) { return Scalar::from_integer(c.n * c.n - c.m * c.m, Q); });
    auto uh = solve_kernel(h);
    for (Cell c : uh.cells())
      if (uh.is_set(c)) CHECK(std::abs(to_double(uh.at(c)) - static_cast<double>(c.n * c.n - c.m * c.m)) <= 1e-9);
  }

  TEST_CASE("single equation N=1") {
    auto d = BoundaryData::from_function(1, Q, [](Cell c) { return Scalar::from_integer(c == Cell{0, 1} ? 1 : 0, Q); });
    CHECK(solve_direct(d, DirectMode::ExactRational).at(Cell{0, 0}) == Scalar(Rational(1, 4)));
  }

  TEST_CASE("exact solve satisfies the mean value property exactly") {
    SplitMix64 rng(11);
    for (long N : {3L, 7L, 16L}) {
      auto d = random_boundary(N, rng, "rational");
      auto u = solve_direct(d, DirectMode::ExactRational);
      for (long m = -N + 1; m < N; ++m)
        for (long n = -N + 1; n < N; ++n) CHECK(laplacian_residual(u, {n, m}).is_zero());
    }
  }

  TEST_CASE("exact vs float vs kernel at N=8") {
    SplitMix64 rng(8);
    for (int i = 0; i < 3; ++i) {
      auto d = random_boundary(8, rng, i ? "rational" : "sign");
      auto ex = solve_direct(d, DirectMode::ExactRational);
      DirectReport rep;
      auto fl = solve_direct(d, DirectMode::FloatIterative, {}, &rep);
      CHECK(rep.residual <= 1e-12 * d.max_abs());
      CHECK(max_dev(ex, fl) <= 1e-11);
      CHECK(max_dev(ex, solve_kernel(d)) <= 1e-9);
    }
  }

  TEST_CASE("preconditions") {
    SplitMix64 rng(1);
    CHECK_THROWS_AS(solve_direct(random_boundary(17, rng), DirectMode::ExactRational), precondition_error);
    CHECK_THROWS_AS(random_boundary(0, rng), precondition_error);
    CHECK_THROWS_AS(compute_ak_mp(4, 8, 64), precondition_error);
  }

  TEST_CASE("complex extension restricts to the real kernel") {
    const long N = 16;
    const Cell y{3, N};
    for (long n = -N + 1; n < N; ++n) {
      auto g = kernel_value_complex(N, {static_cast<double>(n) / N, 0.0}, 2, y);
      CHECK(g.real() == doctest::Approx(kernel_value(N, {n, 2}, y)).epsilon(1e-12));
      CHECK(std::abs(g.imag()) <= 1e-14);
    }
  }

  TEST_CASE("complex scan maximum sits on the region boundary") {
    const long N = 16;
    ComplexRegion reg;
    ScanReport r = complex_extension_scan(N, 0, Cell{0, N}, reg);
    const bool on_edge = std::abs(std::abs(r.z.real()) - 0.5) < 1e-12 || std::abs(std::abs(r.z.imag()) - 1.0 / 16) < 1e-12;
    CHECK(on_edge);
    auto s = complex_extension_scan(N, reg, 0, Exec::Serial);
    auto p = complex_extension_scan(N, reg, 0, Exec::Parallel);
    CHECK(s.max_abs == p.max_abs);
  }

  TEST_CASE("gradient ratio") {
    auto lin = GridFunction::from_function(Square{{0, 0}, 20}, Q, [](Cell c) { return Scalar::from_integer(c.n, Q); });
    CHECK(gradient_ratio(lin, 10) == doctest::Approx(0.5));
    auto one = GridFunction::from_function(Square{{0, 0}, 8}, Q, [](Cell) { return Scalar::one(Q); });
    CHECK(gradient_ratio(one, 4) == 0.0);
  }
}
