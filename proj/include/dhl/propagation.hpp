#pragma once

// Propagation of smallness along a horizontal line: analytic extension of
// n -> u(n, m0) through the complex kernel, Taylor truncation, a discrete
// Remez step, the two-case degree choice, remainder composition and a
// descriptive three-square fit.

#include <complex>
#include <optional>
#include <vector>

#include "dhl/dirichlet.hpp"

namespace dhl {

/// Radius constant: the Taylor tail on |z| <= r is bounded by max|f| (L r)^{d+1}.
inline constexpr double kPropagationL = 32.0;

struct AnalyticLineExtension {
  long N = 0;
  long m0 = 0;
  double data_max = 0.0;
  kernels::SineBasis basis;
  std::vector<std::vector<double>> coef;     // per side sine coefficients
  std::vector<std::complex<double>> taylor;  // about 0, Cauchy quadrature
  double max_abs = 0.0;                      // max of |f| over the region grid
  std::complex<double> argmax;

  /// f(z) with f(n/N) = u(n, m0).
  std::complex<double> operator()(std::complex<double> z) const;
  /// Taylor polynomial of degree d at z.
  std::complex<double> taylor_eval(int d, std::complex<double> z) const;
};

/// Taylor coefficients use a 512-node trapezoid rule on |z| = 1/32, at 256 bits.
AnalyticLineExtension analytic_extension(const BoundaryData& data, long m0, int taylor_terms = 32,
                                         const ComplexRegion& region = {}, int nodes = 512);

/// max|f| (L r)^{d+1}; requires r < 1/L.
double taylor_truncation_bound(const AnalyticLineExtension& ext, int d, double r);

struct PropagationReport {
  long N = 0;
  long m0 = 0;
  double sigma = 0.0;
  double gamma = 0.0;
  std::vector<long> small_points;
  long J = 0;
  long J0 = 0;       // 0 in case (ii)
  int case_taken = 0;  // 1 or 2
  double split_lhs = 0.0;  // max|f| (2 gamma L)^{[J/2]}
  int degree = 0;
  double L = kPropagationL;
  double max_f = 0.0;
  double C0 = 0.0;   // max|f| / max|data|
  double trunc_points = 0.0;
  double trunc_target = 0.0;
  long target_half = 0;  // target segment |n| <= target_half
  long remez_l = 0;
  double remez_factor = 0.0;
  double certified_bound = 0.0;
  double true_max = 0.0;
  bool dominates = false;
  bool within_proof_regime = false;  // gamma < 2^-8 / L
};

/// The pipeline on line m0. small_points are integers n with |n| <= gamma N
/// and |u(n, m0)| <= sigma (checked against the direct solve).
PropagationReport propagate_smallness(const BoundaryData& data, long m0, double sigma, double gamma,
                                      const std::vector<long>& small_points,
                                      kernels::Exec exec = kernels::Exec::Parallel);

/// Integers n in [-gamma N, gamma N] with |u(n, m0)| <= sigma.
std::vector<long> small_points_on_line(const std::vector<double>& grid, long N, long m0, double sigma, double gamma);

/// r(sigma) = C (M^beta sigma^{1-beta} + e^{-cN} M).
struct RemainderParams {
  double C = 1.0;
  double beta = 0.5;
  double c = 1.0;
  void validate() const;
};

RemainderParams compose_remainders(const RemainderParams& inner, const RemainderParams& outer);
/// log r(sigma) computed in log space.
double log_remainder(const RemainderParams& p, double log_sigma, double log_M, double N);
/// r_outer(r_inner(sigma)) <= r_composed(sigma), relative slack 1e-12.
bool composition_dominates(const RemainderParams& inner, const RemainderParams& outer, double sigma, double M,
                           double N);

struct ThreeCircleReport {
  long N = 0;
  double log_sigma = 0.0;
  double log_M = 0.0;    // max over Q_N
  double log_mid = 0.0;  // max over Q_[N/2]
  Rational small_fraction;  // portion of Q_[N/4] with |u| <= sigma
  std::optional<RemainderParams> params;
  std::optional<bool> holds;  // mid <= C M^beta sigma^{1-beta} + C e^{-cN} M
  std::optional<double> alpha_hat;
  double c_fit = 4.0;
};

/// params absent: fit alpha with c = c_fit.
ThreeCircleReport three_circle_report(const GridFunction& u, long N, const Scalar& sigma,
                                      std::optional<RemainderParams> params, double c_fit = 4.0);

}  // namespace dhl
