#include <doctest.h>

#include <cmath>

#include "dhl/dirichlet.hpp"
#include "dhl/kernels.hpp"

using namespace dhl;
using kernels::Exec;

TEST_SUITE("kernels") {
  TEST_CASE("stable rho matches the sinh ratio where both are finite") {
    for (long N : {2L, 5L, 20L})
      for (long k = 1; k < 2 * N; ++k) {
        const double a = kernels::ak(N, k);
        for (long x = -N; x <= N; ++x) {
          const double direct = std::sinh(a * static_cast<double>(x + N)) / std::sinh(2.0 * a * static_cast<double>(N));
          CHECK(kernels::rho(a, N, static_cast<double>(x)) == doctest::Approx(direct).epsilon(1e-12));
        }
      }
    // no overflow at N = 400
    const double a = kernels::ak(400, 799);
    CHECK(std::isfinite(kernels::rho(a, 400, 399.0)));
  }

  TEST_CASE("red-black SOR serial and parallel are bit-identical") {
    SplitMix64 rng(2);
    auto d = random_boundary(10, rng, "rational");
    auto s = solve_float(d, true, Exec::Serial);
    auto p = solve_float(d, true, Exec::Parallel);
    CHECK(s == p);
    CHECK(kernels::max_residual(10, s, Exec::Serial) == kernels::max_residual(10, p, Exec::Parallel));
  }

  TEST_CASE("kernel_sum serial and parallel are bit-identical") {
    SplitMix64 rng(3);
    auto d = random_boundary(15, rng, "sign");
    CHECK(solve_float(d, false, Exec::Serial) == solve_float(d, false, Exec::Parallel));
  }

  TEST_CASE("sign fault flips entries") {
    auto b = kernels::make_basis(3);
    const double v = kernels::kernel_top(b, 0, 0, 1);
    kernels::set_kernel_sign_fault(true);
    const double f = kernels::kernel_top(b, 0, 0, 1);
    kernels::set_kernel_sign_fault(false);
    CHECK(f == -v);
  }
}
