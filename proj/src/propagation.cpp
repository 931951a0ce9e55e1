#include "dhl/propagation.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <cmath>

#include "dhl/error.hpp"
#include "dhl/remez.hpp"

namespace dhl {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double log_add(double x, double y) {
  if (x < y) std::swap(x, y);
  if (std::isinf(y) && y < 0) return x;
  return x + std::log1p(std::exp(y - x));
}

long floor_times(double gamma, long N) { return static_cast<long>(std::floor(gamma * static_cast<double>(N) * (1.0 + 1e-12))); }

// The j-th Cauchy coefficient divides sample noise by r^j = 32^-j, so the
// samples and the quadrature sum run at 256 bits.
using Big = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<78>,
                                          boost::multiprecision::et_off>;

struct BigC {
  Big re, im;
};

BigC mul(const BigC& x, const BigC& y) { return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re}; }
BigC inv(const BigC& x) {
  Big n = x.re * x.re + x.im * x.im;
  return {x.re / n, -x.im / n};
}
BigC expc(const Big& re, const Big& im) {
  Big e = exp(re);
  return {e * cos(im), e * sin(im)};
}

Big to_big(const Scalar& s) {
  Big out;
  switch (s.kind().tag()) {
    case ScalarKind::Tag::Rational:
      mpfr_set_q(out.backend().data(), s.as_rational().get_mpq_t(), MPFR_RNDN);
      break;
    case ScalarKind::Tag::Quadratic:
      mpfr_set(out.backend().data(), to_float(s, 256).as_float().get(), MPFR_RNDN);
      break;
    case ScalarKind::Tag::Float:
      mpfr_set(out.backend().data(), s.as_float().get(), MPFR_RNDN);
      break;
    default:
      throw precondition_error("boundary data must be real");
  }
  return out;
}

std::vector<std::complex<double>> cauchy_taylor(const BoundaryData& data, long m0, int terms, int nodes) {
  const long N = data.N, K = 2 * N - 1;
  const Big pi = boost::multiprecision::default_ops::get_constant_pi<Big::backend_type>(), two = 2;
  const Big bn = N;
  std::vector<Big> a(static_cast<std::size_t>(K)), s2a(static_cast<std::size_t>(K));
  std::vector<std::vector<Big>> c(4, std::vector<Big>(static_cast<std::size_t>(K)));
  for (long k = 1; k <= K; ++k) {
    a[k - 1] = 2 * asinh(sin(pi * k / (4 * bn)));
    s2a[k - 1] = sinh(2 * a[k - 1] * bn);
  }
  auto sine = [&](long k, long x) { return sin(pi * ((k * (x + N)) % (4 * N)) / (2 * bn)); };
  auto rho = [&](long k, long x) { return sinh(a[k - 1] * (x + N)) / s2a[k - 1]; };
  for (std::size_t j = 0; j < data.cells.size(); ++j) {
    if (data.values[j].is_zero()) continue;
    const Cell& y = data.cells[j];
    const Big v = to_big(data.values[j]);
    const int side = y.m == N ? 0 : y.m == -N ? 1 : y.n == N ? 2 : 3;
    const long coord = side < 2 ? y.n : y.m;
    for (long k = 1; k <= K; ++k) c[side][k - 1] += sine(k, coord) * v;
  }
  std::vector<Big> horiz(static_cast<std::size_t>(K)), ep(static_cast<std::size_t>(K)), em(static_cast<std::size_t>(K)),
      vert2(static_cast<std::size_t>(K)), vert3(static_cast<std::size_t>(K));
  for (long k = 1; k <= K; ++k) {
    const auto i = static_cast<std::size_t>(k - 1);
    horiz[i] = rho(k, m0) * c[0][i] + rho(k, -m0) * c[1][i];
    ep[i] = exp(a[i] * bn);
    em[i] = 1 / ep[i];
    const Big w = sine(k, m0) / (2 * s2a[i]);
    vert2[i] = w * c[2][i];
    vert3[i] = w * c[3][i];
  }

  const Big r = Big(1) / 32;
  std::vector<BigC> root(static_cast<std::size_t>(nodes)), f(static_cast<std::size_t>(nodes));
  for (int q = 0; q < nodes; ++q) {
    const Big t = 2 * pi * q / nodes;
    root[q] = {cos(t), sin(t)};
  }
  // real data: f(conj z) = conj f(z), so half the circle suffices
  for (int q = 0; q <= nodes / 2; ++q) {
    const Big x = r * root[q].re, y = r * root[q].im;
    // sin(k w) with w = pi (z + 1) / 2, by powers of e^{iw}
    const BigC step = expc(-pi * y / 2, pi * (x + 1) / 2), back = inv(step);
    BigC pk = step, qk = back, acc{0, 0};
    for (long k = 1; k <= K; ++k) {
      const auto i = static_cast<std::size_t>(k - 1);
      if (horiz[i] != 0) {
        acc.re += horiz[i] * (pk.im - qk.im) / 2;
        acc.im -= horiz[i] * (pk.re - qk.re) / 2;
      }
      if (vert2[i] != 0 || vert3[i] != 0) {
        const BigC E = expc(a[i] * bn * x, a[i] * bn * y), Ei = inv(E);
        // rho(zN) = (e^{aN} E - e^{-aN} / E) / (2 sinh 2aN), rho(-zN) with E and 1/E swapped
        acc.re += vert2[i] * (ep[i] * E.re - em[i] * Ei.re) + vert3[i] * (ep[i] * Ei.re - em[i] * E.re);
        acc.im += vert2[i] * (ep[i] * E.im - em[i] * Ei.im) + vert3[i] * (ep[i] * Ei.im - em[i] * E.im);
      }
      pk = mul(pk, step);
      qk = mul(qk, back);
    }
    f[q] = {acc.re / bn, acc.im / bn};
    if (q > 0 && q < nodes - q) f[nodes - q] = {f[q].re, -f[q].im};
  }

  std::vector<std::complex<double>> out;
  Big scale = 1;
  for (int j = 0; j < terms; ++j) {
    BigC sum{0, 0};
    for (int q = 0; q < nodes; ++q) {
      const BigC& w = root[static_cast<std::size_t>((static_cast<long>(j) * (nodes - q)) % nodes)];
      sum.re += f[q].re * w.re - f[q].im * w.im;
      sum.im += f[q].re * w.im + f[q].im * w.re;
    }
    const Big d = scale * nodes;
    out.emplace_back(static_cast<double>(sum.re / d), static_cast<double>(sum.im / d));
    scale *= r;
  }
  return out;
}

}  // namespace

std::complex<double> AnalyticLineExtension::operator()(std::complex<double> z) const {
  std::complex<double> acc = 0.0;
  const double n = static_cast<double>(N);
  for (long k = 1; k <= basis.K(); ++k) {
    const auto i = static_cast<std::size_t>(k - 1);
    const double a = basis.a[i];
    const double horiz = basis.R(k, m0) * coef[0][i] + basis.R(k, -m0) * coef[1][i];
    if (horiz != 0.0) acc += std::sin(kPi * static_cast<double>(k) * (z + 1.0) / 2.0) * horiz;
    const double sm = basis.S(k, m0);
    if (sm != 0.0 && (coef[2][i] != 0.0 || coef[3][i] != 0.0))
      acc += sm * (coef[2][i] * kernels::rho(a, N, z * n) + coef[3][i] * kernels::rho(a, N, -z * n));
  }
  return acc / n;
}

std::complex<double> AnalyticLineExtension::taylor_eval(int d, std::complex<double> z) const {
  require(d >= 0 && static_cast<std::size_t>(d) < taylor.size(), "Taylor degree beyond the cached coefficients");
  std::complex<double> acc = 0.0;
  for (int j = d; j >= 0; --j) acc = acc * z + taylor[static_cast<std::size_t>(j)];
  return acc;
}

AnalyticLineExtension analytic_extension(const BoundaryData& data, long m0, int taylor_terms,
                                         const ComplexRegion& region, int nodes) {
  data.validate();
  const long N = data.N;
  require(N >= 1, "N must be at least 1");
  require(2 * std::labs(m0) < N, "line must satisfy |m0| < N/2");
  require(taylor_terms >= 1 && nodes >= 2 * taylor_terms, "need nodes >= 2 * taylor_terms >= 2");
  AnalyticLineExtension ext;
  ext.N = N;
  ext.m0 = m0;
  ext.data_max = data.max_abs();
  ext.basis = kernels::make_basis(N);
  ext.coef.assign(4, std::vector<double>(static_cast<std::size_t>(ext.basis.K()), 0.0));
  for (std::size_t j = 0; j < data.cells.size(); ++j) {
    const Cell& y = data.cells[j];
    double v = to_double(data.values[j]);
    if (v == 0.0) continue;
    int side = y.m == N ? 0 : y.m == -N ? 1 : y.n == N ? 2 : 3;
    long coord = side < 2 ? y.n : y.m;
    for (long k = 1; k <= ext.basis.K(); ++k)
      ext.coef[static_cast<std::size_t>(side)][static_cast<std::size_t>(k - 1)] += ext.basis.S(k, coord) * v;
  }

  for (auto z : region.grid()) {
    double a = std::abs(ext(z));
    if (a > ext.max_abs) {
      ext.max_abs = a;
      ext.argmax = z;
    }
  }

  ext.taylor = cauchy_taylor(data, m0, taylor_terms, nodes);
  return ext;
}

double taylor_truncation_bound(const AnalyticLineExtension& ext, int d, double r) {
  require(d >= 0, "degree must be nonnegative");
  require(r >= 0.0 && r * kPropagationL < 1.0, "z_radius must be below 1/L = 1/32");
  return ext.max_abs * std::pow(kPropagationL * r, d + 1);
}

std::vector<long> small_points_on_line(const std::vector<double>& grid, long N, long m0, double sigma, double gamma) {
  const long J = 2 * N + 1, h = floor_times(gamma, N);
  std::vector<long> out;
  for (long n = -h; n <= h; ++n)
    if (std::fabs(grid[static_cast<std::size_t>((m0 + N) * J + n + N)]) <= sigma) out.push_back(n);
  return out;
}

PropagationReport propagate_smallness(const BoundaryData& data, long m0, double sigma, double gamma,
                                      const std::vector<long>& small_points, kernels::Exec exec) {
  data.validate();
  const long N = data.N;
  require(N >= 2, "N must be at least 2");
  require(2 * std::labs(m0) < N, "line must satisfy |m0| < N/2");
  require(sigma >= 0.0 && std::isfinite(sigma), "sigma must be a finite nonnegative number");
  require(gamma > 0.0 && 32.0 * gamma < 1.0, "gamma must satisfy 0 < 2 gamma < 1/16");
  const long h = floor_times(gamma, N);
  require(h >= 1, "gamma N < 1: J < 2");

  PropagationReport rep;
  rep.N = N;
  rep.m0 = m0;
  rep.sigma = sigma;
  rep.gamma = gamma;
  rep.small_points = small_points;
  std::sort(rep.small_points.begin(), rep.small_points.end());
  for (std::size_t i = 0; i < rep.small_points.size(); ++i) {
    require(std::labs(rep.small_points[i]) <= h, "small point outside [-gamma N, gamma N]");
    require(i == 0 || rep.small_points[i] != rep.small_points[i - 1], "small points must be distinct");
  }
  rep.J = static_cast<long>(rep.small_points.size());
  require(4 * rep.J >= 2 * h + 1, "fewer than a quarter of the integers in [-gamma N, gamma N] are small");
  require(rep.J >= 2, "J < 2");

  const std::vector<double> grid = solve_float(data, true, exec);
  const long W = 2 * N + 1;
  auto u = [&](long n) { return grid[static_cast<std::size_t>((m0 + N) * W + n + N)]; };
  const double slack = 1e-9 * std::max(1.0, data.max_abs());
  for (long n : rep.small_points)
    require(std::fabs(u(n)) <= sigma + slack, "|u(" + std::to_string(n) + "," + std::to_string(m0) + ")| exceeds sigma");

  AnalyticLineExtension ext = analytic_extension(data, m0, 8);
  rep.max_f = ext.max_abs;
  rep.C0 = data.max_abs() > 0.0 ? ext.max_abs / data.max_abs() : 0.0;
  const double q = 2.0 * gamma * rep.L;
  const long half = rep.J / 2;
  rep.split_lhs = rep.max_f * std::pow(q, static_cast<double>(half));
  if (rep.split_lhs < sigma) {
    rep.case_taken = 1;
    rep.J0 = 1;
    while (rep.max_f * std::pow(q, static_cast<double>(rep.J0)) >= sigma) ++rep.J0;
    rep.degree = static_cast<int>(rep.J0 - 1);
  } else {
    rep.case_taken = 2;
    rep.degree = static_cast<int>(half - 1);
  }
  const int d = rep.degree;
  rep.trunc_points = rep.max_f * std::pow(16.0 * gamma, d + 1) / (1.0 - 16.0 * gamma);
  rep.trunc_target = rep.max_f * std::pow(32.0 * gamma, d + 1) / (1.0 - 32.0 * gamma);
  rep.target_half = floor_times(2.0 * gamma, N);
  rep.remez_l = rep.J - d;
  rep.remez_factor = discrete_remez_factor(d, Rational(2 * rep.target_half), rep.remez_l).get_d();
  rep.certified_bound = rep.remez_factor * (sigma + rep.trunc_points) + rep.trunc_target;
  for (long n = -rep.target_half; n <= rep.target_half; ++n) rep.true_max = std::max(rep.true_max, std::fabs(u(n)));
  rep.dominates = rep.certified_bound >= rep.true_max;
  rep.within_proof_regime = gamma < std::ldexp(1.0, -8) / rep.L;
  return rep;
}

void RemainderParams::validate() const {
  require(std::isfinite(C) && C >= 1.0, "remainder C must be >= 1");
  require(beta > 0.0 && beta < 1.0, "remainder beta must lie in (0,1)");
  require(std::isfinite(c) && c > 0.0, "remainder c must be > 0");
}

RemainderParams compose_remainders(const RemainderParams& inner, const RemainderParams& outer) {
  inner.validate();
  outer.validate();
  RemainderParams out;
  out.beta = outer.beta + inner.beta - outer.beta * inner.beta;
  out.C = outer.C * (std::pow(inner.C, 1.0 - outer.beta) + 1.0);
  out.c = std::min(inner.c * (1.0 - outer.beta), outer.c);
  return out;
}

double log_remainder(const RemainderParams& p, double log_sigma, double log_M, double N) {
  return std::log(p.C) + log_add(p.beta * log_M + (1.0 - p.beta) * log_sigma, log_M - p.c * N);
}

bool composition_dominates(const RemainderParams& inner, const RemainderParams& outer, double sigma, double M,
                           double N) {
  require(sigma > 0.0 && M > 0.0, "sigma and M must be positive");
  const double ls = std::log(sigma), lm = std::log(M);
  double lhs = log_remainder(outer, log_remainder(inner, ls, lm, N), lm, N);
  double rhs = log_remainder(compose_remainders(inner, outer), ls, lm, N);
  return lhs <= rhs + 1e-12 * std::max(1.0, std::fabs(rhs));
}

ThreeCircleReport three_circle_report(const GridFunction& u, long N, const Scalar& sigma,
                                      std::optional<RemainderParams> params, double c_fit) {
  require(u.coords() == Coords::Standard, "three_circle_report needs a standard grid");
  require(N >= 4, "N must be at least 4");
  require(u.kind().real(), "three_circle_report needs real values");
  require(sign(sigma) > 0, "sigma must be positive");
  const Square& W = u.square();
  require(W.radius >= N, "Q_N must lie inside the window");
  const Cell c = W.center;
  ThreeCircleReport rep;
  rep.N = N;
  rep.c_fit = c_fit;
  rep.params = params;
  rep.log_sigma = log_abs(sigma);
  rep.small_fraction = portion_below(u, sigma, Square{c, N / 4});
  require(2 * rep.small_fraction >= 1, "|u| <= sigma holds on less than half of Q_[N/4]");
  auto max_log = [&](long r) {
    double best = -INFINITY;
    for (long m = c.m - r; m <= c.m + r; ++m)
      for (long n = c.n - r; n <= c.n + r; ++n) {
        Cell x{n, m};
        if (u.is_set(x)) best = std::max(best, log_abs(u.at(x)));
      }
    return best;
  };
  rep.log_M = max_log(N);
  rep.log_mid = max_log(N / 2);
  const double nd = static_cast<double>(N);
  if (params) {
    params->validate();
    double rhs = log_remainder(*params, rep.log_sigma, rep.log_M, nd);
    rep.holds = rep.log_mid <= rhs + 1e-12 * std::max(1.0, std::fabs(rhs));
  } else {
    double alpha = 0.0;
    double tail = rep.log_M - c_fit * nd;
    if (rep.log_M > rep.log_sigma && tail < rep.log_mid) {
      double lx = rep.log_mid + std::log1p(-std::exp(tail - rep.log_mid));
      alpha = std::clamp((lx - rep.log_sigma) / (rep.log_M - rep.log_sigma), 0.0, 1.0);
    }
    rep.alpha_hat = alpha;
  }
  return rep;
}

}  // namespace dhl
