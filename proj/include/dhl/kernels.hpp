#pragma once

// Data-parallel numeric kernels behind the Dirichlet and propagation modules.
// Every kernel exists twice: a plain serial loop (the reference) and an
// OpenMP version. Both produce bit-identical results: the parallel loops
// only split independent outputs, and reductions are max-reductions.

#include <complex>
#include <cstddef>
#include <vector>

namespace dhl::kernels {

enum class Exec { Serial, Parallel };

/// Spectral data for Q_N: a_k, sine table S_k(j) = sin(pi k j / 2N) for
/// j = 0..2N (j = n + N), and rho_k(x) = sinh(a_k (x+N)) / sinh(2 a_k N) for
/// x = -N..N. k runs over 1..2N-1; row k-1 of each table.
struct SineBasis {
  long N = 0;
  std::vector<double> a;
  std::vector<double> sine;  // (2N-1) x (2N+1)
  std::vector<double> rho;   // (2N-1) x (2N+1)

  long K() const { return 2 * N - 1; }
  long J() const { return 2 * N + 1; }
  double S(long k, long n) const { return sine[static_cast<std::size_t>((k - 1) * J() + (n + N))]; }
  double R(long k, long x) const { return rho[static_cast<std::size_t>((k - 1) * J() + (x + N))]; }
};

/// a_k = 2 asinh(sin(k pi / 4N)), the positive root of cosh a = 2 - cos(k pi / 2N).
double ak(long N, long k);
/// Overflow-free sinh(a (x+N)) / sinh(2 a N) for complex x.
std::complex<double> rho(double a, long N, std::complex<double> x);
double rho(double a, long N, double x);

SineBasis make_basis(long N);

/// Global switch for the mutation test: negates every kernel entry.
void set_kernel_sign_fault(bool on);
bool kernel_sign_fault();

/// Top-side kernel Ptop((n,m),(n1,N)) from the basis.
double kernel_top(const SineBasis& b, long n, long m, long n1);

/// Kernel table over interior x (traversal order) and boundary y (given).
/// by_side[j] in {0 top, 1 bottom, 2 right, 3 left}, coord[j] the free
/// coordinate of boundary cell j.
void fill_kernel_table(const SineBasis& b, const std::vector<int>& side, const std::vector<long>& coord,
                       std::vector<double>& out, Exec exec);

/// Interior values of the Dirichlet solution from per-side sine coefficients
/// c[side][k-1] = sum over that side of S_k(coord) * value. out is (2N+1)^2
/// row-major (m outer), interior entries overwritten.
void kernel_sum(const SineBasis& b, const std::vector<std::vector<double>>& coef, std::vector<double>& out,
                Exec exec);

struct SorResult {
  long iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

/// Red-black SOR on the (2N+1)^2 grid with fixed boundary (corners unused).
SorResult red_black_sor(long N, std::vector<double>& grid, double omega, double tol, long max_iter, Exec exec);

/// max over the 4-neighbour residual on interior cells.
double max_residual(long N, const std::vector<double>& grid, Exec exec);

struct ScanResult {
  double max_abs = 0.0;
  long side = 0;  // 0 top, 2 right
  long m = 0;
  long y = 0;     // free coordinate of the boundary cell
  std::complex<double> z;
};

/// Max of |P((zN, m), y)| over z on the grid zs, m in ms, y over the top and
/// right sides (bottom and left follow by symmetry).
ScanResult complex_scan(const SineBasis& b, const std::vector<std::complex<double>>& zs, const std::vector<long>& ms,
                        Exec exec);

}  // namespace dhl::kernels
