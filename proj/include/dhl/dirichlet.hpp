#pragma once

// Dirichlet problem on Q_N: explicit Poisson kernel, kernel-sum solver,
// direct oracles (exact banded elimination, red-black SOR), the complex
// extension of the kernel and the gradient estimate.
//
// Boundary: cells with max(|n|,|m|) = N and |n| != |m|; corners excluded.
// Kernel numerics run in binary64; outputs are float(53) grids.

#include <complex>
#include <vector>

#include "dhl/kernels.hpp"
#include "dhl/lattice.hpp"
#include "dhl/rng.hpp"

namespace dhl {

struct BoundaryData {
  long N = 0;
  ScalarKind kind;
  std::vector<Cell> cells;  // traversal order restricted to the boundary
  std::vector<Scalar> values;

  static std::vector<Cell> boundary_cells(long N);
  static BoundaryData from_function(long N, const ScalarKind& kind, const std::function<Scalar(Cell)>& f);
  /// Restriction of a standard grid (window must contain Q_N about the origin).
  static BoundaryData from_grid(const GridFunction& u, long N);

  std::size_t index_of(Cell c) const;
  const Scalar& at(Cell c) const { return values[index_of(c)]; }
  std::vector<double> as_doubles() const;
  double max_abs() const;
  void validate() const;
};

/// Random data: mode "sign" gives +-1, mode "rational" gives p/q in [-1,1]
/// with q <= 16. Both rational kind.
BoundaryData random_boundary(long N, SplitMix64& rng, const std::string& mode = "sign");

/// a_k in binary64 (stable asinh form).
double compute_ak(long N, long k);
/// a_k = arccosh(2 - cos(k pi / 2N)) in MPFR at the given precision.
BigFloat compute_ak_mp(long N, long k, unsigned bits);

/// P(x, y) for interior x (|n|,|m| <= N-1) and boundary y.
double kernel_value(long N, Cell x, Cell y);
/// g(z) = P((zN, m), y), the holomorphic extension in the first coordinate.
std::complex<double> kernel_value_complex(long N, std::complex<double> z, long m, Cell y);

struct PoissonKernelTable {
  long N = 0;
  std::vector<Cell> interior;
  std::vector<Cell> boundary;
  std::vector<double> values;  // interior-major
  double at(std::size_t i, std::size_t j) const { return values[i * boundary.size() + j]; }
};

PoissonKernelTable build_kernel_table(long N, kernels::Exec exec = kernels::Exec::Parallel);

/// Interior values by kernel summation (factorised sine sums). Corners unset.
GridFunction solve_kernel(const BoundaryData& data, kernels::Exec exec = kernels::Exec::Parallel);
/// Same, by multiplying the full kernel table with the data (oracle route).
GridFunction solve_kernel_table(const BoundaryData& data, const PoissonKernelTable& table);

enum class DirectMode { ExactRational, FloatIterative };

struct DirectOptions {
  double rel_tol = 1e-13;  // residual <= rel_tol * max|data|
  long max_iter = 200000;
  kernels::Exec exec = kernels::Exec::Parallel;
};

struct DirectReport {
  long iterations = 0;
  double residual = 0.0;
};

GridFunction solve_direct(const BoundaryData& data, DirectMode mode, const DirectOptions& opt = {},
                          DirectReport* report = nullptr);

/// Interior-plus-boundary values in binary64, (2N+1)^2 row-major (m outer);
/// corners hold 0. Used by the numeric pipelines.
std::vector<double> solve_float(const BoundaryData& data, bool direct, kernels::Exec exec = kernels::Exec::Parallel);

struct ComplexRegion {
  int nx = 129;  // samples of Re z over [-1/2, 1/2]
  int ny = 33;   // samples of Im z over [-1/16, 1/16]
  std::vector<std::complex<double>> grid() const;
};

struct ScanReport {
  long N = 0;
  double max_abs = 0.0;
  double scaled = 0.0;  // N * max_abs
  Cell y;
  long m = 0;
  std::complex<double> z;
  long m_stride = 1;
};

/// Max |P((zN, m), y)| over the region grid, y in boundary, |m| <= N/2
/// stepped by m_stride (0 = automatic max(1, N/16)).
ScanReport complex_extension_scan(long N, const ComplexRegion& region = {}, long m_stride = 0,
                                  kernels::Exec exec = kernels::Exec::Parallel);
/// Max over the grid for a single (m, y).
ScanReport complex_extension_scan(long N, long m, Cell y, const ComplexRegion& region = {});

/// max over adjacent q, q' in Q_R of |u(q)-u(q')| * R / max_{Q_2R}|u|.
double gradient_ratio(const GridFunction& u, long R);

}  // namespace dhl
