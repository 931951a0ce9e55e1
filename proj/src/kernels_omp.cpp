#include <omp.h>

#include <cmath>

#include "dhl/error.hpp"
#include "kernels_impl.hpp"

namespace dhl::kernels {

namespace omp {

void fill_kernel_table(const SineBasis& b, const std::vector<int>& side, const std::vector<long>& coord,
                       std::vector<double>& out) {
  const long N = b.N, W = 2 * N - 1;
  const std::size_t ny = side.size();
  out.assign(static_cast<std::size_t>(W * W) * ny, 0.0);
#pragma omp parallel for schedule(static)
  for (long row = 0; row < W * W; ++row) {
    long m = row / W - N + 1, n = row % W - N + 1;
    for (std::size_t j = 0; j < ny; ++j)
      out[static_cast<std::size_t>(row) * ny + j] = table_entry(b, n, m, side[j], coord[j]);
  }
}

void kernel_sum(const SineBasis& b, const std::vector<std::vector<double>>& coef, std::vector<double>& out) {
  const long N = b.N, J = 2 * N + 1, W = 2 * N - 1;
#pragma omp parallel for schedule(static)
  for (long row = 0; row < W * W; ++row) {
    long m = row / W - N + 1, n = row % W - N + 1;
    out[static_cast<std::size_t>((m + N) * J + n + N)] = kernel_sum_at(b, coef, n, m);
  }
}

void sor_colour(long N, std::vector<double>& g, double omega, int colour) {
#pragma omp parallel for schedule(static)
  for (long m = -N + 1; m <= N - 1; ++m) sor_row(N, g, omega, m, colour);
}

double max_residual(long N, const std::vector<double>& g) {
  double worst = 0.0;
#pragma omp parallel for schedule(static) reduction(max : worst)
  for (long m = -N + 1; m <= N - 1; ++m) worst = std::max(worst, residual_row(N, g, m));
  return worst;
}

ScanResult complex_scan(const SineBasis& b, const std::vector<std::complex<double>>& zs, const std::vector<long>& ms) {
  ScanResult best;
  best.max_abs = -1.0;
  const long nz = static_cast<long>(zs.size());
  for (int side : {0, 2})
    for (long m : ms) {
      double bv = -1.0;
      long bz = -1, by = 0;
#pragma omp parallel
      {
        std::vector<double> re, im, ar, ai;
        double tv = -1.0;
        long tz = -1, ty = 0;
#pragma omp for schedule(static) nowait
        for (long iz = 0; iz < nz; ++iz) {
          scan_row(b, zs[static_cast<std::size_t>(iz)], m, side, re, im);
          auto [v, y] = scan_best_y(b, re, im, ar, ai);
          if (v > tv) {
            tv = v;
            tz = iz;
            ty = y;
          }
        }
#pragma omp critical
        {
          if (tz >= 0 && (tv > bv || (tv == bv && tz < bz))) {
            bv = tv;
            bz = tz;
            by = ty;
          }
        }
      }
      if (bz >= 0 && bv > best.max_abs) best = {bv, side, m, by, zs[static_cast<std::size_t>(bz)]};
    }
  return best;
}

}  // namespace omp

void fill_kernel_table(const SineBasis& b, const std::vector<int>& side, const std::vector<long>& coord,
                       std::vector<double>& out, Exec exec) {
  require(side.size() == coord.size(), "side/coord length mismatch");
  if (exec == Exec::Serial)
    serial::fill_kernel_table(b, side, coord, out);
  else
    omp::fill_kernel_table(b, side, coord, out);
}

void kernel_sum(const SineBasis& b, const std::vector<std::vector<double>>& coef, std::vector<double>& out,
                Exec exec) {
  require(coef.size() == 4, "kernel_sum needs four sides of coefficients");
  out.resize(static_cast<std::size_t>((2 * b.N + 1) * (2 * b.N + 1)), 0.0);
  if (exec == Exec::Serial)
    serial::kernel_sum(b, coef, out);
  else
    omp::kernel_sum(b, coef, out);
}

double max_residual(long N, const std::vector<double>& grid, Exec exec) {
  return exec == Exec::Serial ? serial::max_residual(N, grid) : omp::max_residual(N, grid);
}

SorResult red_black_sor(long N, std::vector<double>& grid, double omega, double tol, long max_iter, Exec exec) {
  require(grid.size() == static_cast<std::size_t>((2 * N + 1) * (2 * N + 1)), "SOR grid has the wrong size");
  SorResult res;
  constexpr long kCheckEvery = 8;
  for (long it = 1; it <= max_iter; ++it) {
    for (int colour : {0, 1}) {
      if (exec == Exec::Serial)
        serial::sor_colour(N, grid, omega, colour);
      else
        omp::sor_colour(N, grid, omega, colour);
    }
    res.iterations = it;
    if (it % kCheckEvery == 0 || it == max_iter) {
      res.residual = max_residual(N, grid, exec);
      if (res.residual <= tol) {
        res.converged = true;
        return res;
      }
    }
  }
  return res;
}

ScanResult complex_scan(const SineBasis& b, const std::vector<std::complex<double>>& zs, const std::vector<long>& ms,
                        Exec exec) {
  return exec == Exec::Serial ? serial::complex_scan(b, zs, ms) : omp::complex_scan(b, zs, ms);
}

}  // namespace dhl::kernels
