#include <atomic>
#include <cmath>

#include "dhl/error.hpp"
#include "kernels_impl.hpp"

namespace dhl::kernels {

namespace {
std::atomic<bool> g_sign_fault{false};
constexpr double kPi = 3.141592653589793238462643383279502884;
}  // namespace

void set_kernel_sign_fault(bool on) { g_sign_fault = on; }
bool kernel_sign_fault() { return g_sign_fault; }

double ak(long N, long k) {
  require(N >= 1, "N must be at least 1");
  require(k > 0 && k < 2 * N, "k must satisfy 0 < k < 2N");
  return 2.0 * std::asinh(std::sin(static_cast<double>(k) * kPi / (4.0 * static_cast<double>(N))));
}

double rho(double a, long N, double x) {
  double n = static_cast<double>(N);
  double num = -std::expm1(-2.0 * a * (x + n));
  double den = -std::expm1(-4.0 * a * n);
  return std::exp(a * (x - n)) * num / den;
}

std::complex<double> rho(double a, long N, std::complex<double> x) {
  double n = static_cast<double>(N);
  std::complex<double> num = 1.0 - std::exp(-2.0 * a * (x + n));
  double den = -std::expm1(-4.0 * a * n);
  return std::exp(a * (x - n)) * num / den;
}

SineBasis make_basis(long N) {
  require(N >= 1, "N must be at least 1");
  SineBasis b;
  b.N = N;
  const long K = b.K(), J = b.J();
  b.a.resize(static_cast<std::size_t>(K));
  b.sine.resize(static_cast<std::size_t>(K * J));
  b.rho.resize(static_cast<std::size_t>(K * J));
  for (long k = 1; k <= K; ++k) {
    double a = ak(N, k);
    b.a[static_cast<std::size_t>(k - 1)] = a;
    for (long j = 0; j < J; ++j) {
      // reduce k*j mod 4N so the sine argument stays in [0, 2pi)
      long r = (k * j) % (4 * N);
      b.sine[static_cast<std::size_t>((k - 1) * J + j)] =
          std::sin(kPi * static_cast<double>(r) / (2.0 * static_cast<double>(N)));
      b.rho[static_cast<std::size_t>((k - 1) * J + j)] = rho(a, N, static_cast<double>(j - N));
    }
  }
  return b;
}

double kernel_top(const SineBasis& b, long n, long m, long n1) {
  double acc = 0.0;
  for (long k = 1; k <= b.K(); ++k) acc += b.S(k, n) * b.S(k, n1) * b.R(k, m);
  acc /= static_cast<double>(b.N);
  return g_sign_fault ? -acc : acc;
}

double table_entry(const SineBasis& b, long n, long m, int side, long coord) {
  switch (side) {
    case 0:
      return kernel_top(b, n, m, coord);
    case 1:
      return kernel_top(b, n, -m, coord);
    case 2:
      return kernel_top(b, m, n, coord);
    default:
      return kernel_top(b, m, -n, coord);
  }
}

double kernel_sum_at(const SineBasis& b, const std::vector<std::vector<double>>& coef, long n, long m) {
  double acc = 0.0;
  for (long k = 1; k <= b.K(); ++k) {
    auto i = static_cast<std::size_t>(k - 1);
    acc += b.S(k, n) * (b.R(k, m) * coef[0][i] + b.R(k, -m) * coef[1][i]) +
           b.S(k, m) * (b.R(k, n) * coef[2][i] + b.R(k, -n) * coef[3][i]);
  }
  acc /= static_cast<double>(b.N);
  return g_sign_fault ? -acc : acc;
}

void scan_row(const SineBasis& b, std::complex<double> z, long m, int side, std::vector<double>& re,
              std::vector<double>& im) {
  const long K = b.K();
  re.resize(static_cast<std::size_t>(K));
  im.resize(static_cast<std::size_t>(K));
  const double n = static_cast<double>(b.N);
  for (long k = 1; k <= K; ++k) {
    std::complex<double> v;
    double a = b.a[static_cast<std::size_t>(k - 1)];
    if (side == 0) {
      v = std::sin(kPi * static_cast<double>(k) * (z + 1.0) / 2.0) * b.R(k, m);
    } else {
      v = b.S(k, m) * rho(a, b.N, z * n);
    }
    re[static_cast<std::size_t>(k - 1)] = v.real();
    im[static_cast<std::size_t>(k - 1)] = v.imag();
  }
}

std::pair<double, long> scan_best_y(const SineBasis& b, const std::vector<double>& re, const std::vector<double>& im,
                                    std::vector<double>& acc_re, std::vector<double>& acc_im) {
  const long N = b.N, K = b.K(), J = b.J();
  acc_re.assign(static_cast<std::size_t>(J), 0.0);
  acc_im.assign(static_cast<std::size_t>(J), 0.0);
  for (long k = 1; k <= K; ++k) {
    const double* s = &b.sine[static_cast<std::size_t>((k - 1) * J)];
    const double r = re[static_cast<std::size_t>(k - 1)], i = im[static_cast<std::size_t>(k - 1)];
    for (long j = 1; j < J - 1; ++j) {
      acc_re[static_cast<std::size_t>(j)] += r * s[j];
      acc_im[static_cast<std::size_t>(j)] += i * s[j];
    }
  }
  double best = -1.0;
  long arg = 0;
  for (long j = 1; j < J - 1; ++j) {
    double v = std::hypot(acc_re[static_cast<std::size_t>(j)], acc_im[static_cast<std::size_t>(j)]);
    if (v > best) {
      best = v;
      arg = j - N;
    }
  }
  return {best / static_cast<double>(N), arg};
}

void sor_row(long N, std::vector<double>& g, double omega, long m, int colour) {
  const long J = 2 * N + 1;
  const long row = (m + N) * J;
  long n0 = -N + 1;
  if (((n0 + m) & 1L) != colour) ++n0;
  for (long n = n0; n <= N - 1; n += 2) {
    auto i = static_cast<std::size_t>(row + n + N);
    double nb = g[i - 1] + g[i + 1] + g[i - static_cast<std::size_t>(J)] + g[i + static_cast<std::size_t>(J)];
    g[i] += omega * (0.25 * nb - g[i]);
  }
}

double residual_row(long N, const std::vector<double>& g, long m) {
  const long J = 2 * N + 1;
  const long row = (m + N) * J;
  double worst = 0.0;
  for (long n = -N + 1; n <= N - 1; ++n) {
    auto i = static_cast<std::size_t>(row + n + N);
    double r = g[i - 1] + g[i + 1] + g[i - static_cast<std::size_t>(J)] + g[i + static_cast<std::size_t>(J)] - 4.0 * g[i];
    worst = std::max(worst, std::fabs(r));
  }
  return worst;
}

namespace serial {

void fill_kernel_table(const SineBasis& b, const std::vector<int>& side, const std::vector<long>& coord,
                       std::vector<double>& out) {
  const long N = b.N, W = 2 * N - 1;
  const std::size_t ny = side.size();
  out.assign(static_cast<std::size_t>(W * W) * ny, 0.0);
  for (long m = -N + 1; m <= N - 1; ++m)
    for (long n = -N + 1; n <= N - 1; ++n) {
      auto row = static_cast<std::size_t>((m + N - 1) * W + (n + N - 1));
      for (std::size_t j = 0; j < ny; ++j) out[row * ny + j] = table_entry(b, n, m, side[j], coord[j]);
    }
}

void kernel_sum(const SineBasis& b, const std::vector<std::vector<double>>& coef, std::vector<double>& out) {
  const long N = b.N, J = 2 * N + 1;
  for (long m = -N + 1; m <= N - 1; ++m)
    for (long n = -N + 1; n <= N - 1; ++n)
      out[static_cast<std::size_t>((m + N) * J + n + N)] = kernel_sum_at(b, coef, n, m);
}

void sor_colour(long N, std::vector<double>& g, double omega, int colour) {
  for (long m = -N + 1; m <= N - 1; ++m) sor_row(N, g, omega, m, colour);
}

double max_residual(long N, const std::vector<double>& g) {
  double worst = 0.0;
  for (long m = -N + 1; m <= N - 1; ++m) worst = std::max(worst, residual_row(N, g, m));
  return worst;
}

ScanResult complex_scan(const SineBasis& b, const std::vector<std::complex<double>>& zs, const std::vector<long>& ms) {
  ScanResult best;
  best.max_abs = -1.0;
  std::vector<double> re, im, ar, ai;
  for (int side : {0, 2})
    for (long m : ms)
      for (const auto& z : zs) {
        scan_row(b, z, m, side, re, im);
        auto [v, y] = scan_best_y(b, re, im, ar, ai);
        if (v > best.max_abs) best = {v, side, m, y, z};
      }
  return best;
}

}  // namespace serial

}  // namespace dhl::kernels
