// Serial reference vs OpenMP kernels: wall time and agreement.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include <CLI11.hpp>

#include "dhl/dirichlet.hpp"
#include "dhl/kernels.hpp"

using namespace dhl;
using kernels::Exec;

namespace {

double seconds(const std::function<void()>& f, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

void row(const char* name, long N, double ts, double tp, double diff) {
  std::printf("%-14s N=%-4ld serial %9.4f s  omp %9.4f s  speedup %5.2f  max|diff| %.3g\n", name, N, ts, tp, ts / tp, diff);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kernel benchmark"};
  long N = 32;
  int reps = 3;
  app.add_option("--n", N, "radius")->capture_default_str();
  app.add_option("--reps", reps, "repetitions")->capture_default_str();
  CLI11_PARSE(app, argc, argv);
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());

  const auto basis = kernels::make_basis(N);
  const auto bd = BoundaryData::boundary_cells(N);
  std::vector<int> side;
  std::vector<long> coord;
  for (Cell y : bd) {
    if (y.m == N) side.push_back(0), coord.push_back(y.n);
    else if (y.m == -N) side.push_back(1), coord.push_back(y.n);
    else if (y.n == N) side.push_back(2), coord.push_back(y.m);
    else side.push_back(3), coord.push_back(y.m);
  }

  {
    std::vector<double> s, p;
    double ts = seconds([&] { kernels::fill_kernel_table(basis, side, coord, s, Exec::Serial); }, reps);
    double tp = seconds([&] { kernels::fill_kernel_table(basis, side, coord, p, Exec::Parallel); }, reps);
    row("kernel-table", N, ts, tp, max_diff(s, p));
  }
  {
    SplitMix64 rng(1);
    std::vector<std::vector<double>> coef(4, std::vector<double>(static_cast<std::size_t>(basis.K())));
    for (auto& c : coef)
      for (auto& x : c) x = 2.0 * rng.uniform01() - 1.0;
    const std::size_t cells = static_cast<std::size_t>((2 * N + 1) * (2 * N + 1));
    std::vector<double> s(cells, 0.0), p(cells, 0.0);
    double ts = seconds([&] { kernels::kernel_sum(basis, coef, s, Exec::Serial); }, reps);
    double tp = seconds([&] { kernels::kernel_sum(basis, coef, p, Exec::Parallel); }, reps);
    row("kernel-sum", N, ts, tp, max_diff(s, p));
  }
  {
    SplitMix64 rng(2);
    const BoundaryData d = random_boundary(N, rng, "rational");
    std::vector<double> s, p;
    double ts = seconds([&] { s = solve_float(d, true, Exec::Serial); }, reps);
    double tp = seconds([&] { p = solve_float(d, true, Exec::Parallel); }, reps);
    row("red-black-sor", N, ts, tp, max_diff(s, p));
  }
  {
    const auto zs = ComplexRegion{}.grid();
    std::vector<long> ms;
    for (long m = -N / 2; m <= N / 2; m += std::max(1L, N / 16)) ms.push_back(m);
    kernels::ScanResult s, p;
    double ts = seconds([&] { s = kernels::complex_scan(basis, zs, ms, Exec::Serial); }, 1);
    double tp = seconds([&] { p = kernels::complex_scan(basis, zs, ms, Exec::Parallel); }, 1);
    row("complex-scan", N, ts, tp, std::abs(s.max_abs - p.max_abs));
  }
  return 0;
}
