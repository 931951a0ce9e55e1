#pragma once

// Harmonic extension on sloped rectangles from an L-shaped seed, the
// half-plane vanishing construction, line polynomials and the Remez bound
// along the top line of a rectangle.

#include <vector>

#include "dhl/lattice.hpp"

namespace dhl {

/// Values on S = {(s,k) in R : min(s - a1, k - b1) in {0, 1/2}}.
struct LShapeData {
  SlopedRect rect;
  ScalarKind kind;
  std::vector<SlopedCell> cells;  // S in sloped traversal order
  std::vector<Scalar> values;

  static std::vector<SlopedCell> domain(const SlopedRect& rect);
  static LShapeData from_function(const SlopedRect& rect, const ScalarKind& kind,
                                  const std::function<Scalar(SlopedCell)>& f);
  void validate() const;
};

/// Unique sloped-harmonic extension, filled by increasing k then s.
GridFunction extend_lshape(const LShapeData& data);

struct LShapeBounds {
  bool global_ok = true;    // max_R |U| <= 7^{a+b} max_S |U|
  bool cellwise_ok = true;  // |U(s,k)| <= 7^{s+k-a1-b1} max_S |U|
  std::optional<SlopedCell> witness;
};

LShapeBounds check_lshape_bounds(const GridFunction& U, const LShapeData& data);

/// Free values t_1..t_D, one per diagonal d = m - n (anchor cell (0, d)),
/// for the window Q_N; missing t_d are zero.
struct DiagonalSeed {
  long N = 0;
  ScalarKind kind;
  std::vector<Scalar> t;
};

/// u = 0 on n - m >= 0; on diagonal d >= 1, u is fixed by the mean value
/// property on diagonal d-1 and the anchor u(0, d) = t_d.
GridFunction halfplane_construct(const DiagonalSeed& seed);

struct LinePolynomial {
  long k2 = 0;             // doubled line index
  long s2_first = 0;       // doubled s of the first node; t = (S - s2_first) / 2
  long degree_bound = 0;   // 2(k - b1) - 2
  int degree = -1;         // actual degree (-1 for zero)
  std::vector<Scalar> newton;  // forward differences at t = 0
  std::vector<Scalar> coeffs;  // monomial coefficients in t
  std::vector<Scalar> values;  // (-1)^{s+k} U(s,k) along the line

  Scalar eval(long t) const;
};

/// Interpolating polynomial of s -> (-1)^{s+k} U(s,k) on T_k. Exact kinds only.
LinePolynomial line_polynomial(const GridFunction& U, const SlopedRect& rect, long k2);

struct LineBound {
  Rational bound;
  Rational actual_max;
  int degree = 0;
  long points = 0;
  long small_points = 0;
  Rational factor;
};

/// Discrete Remez bound for max over T_{b2} of |U| from |U| <= M on at
/// least half of T_{b2}. Rational kind only.
LineBound remez_line_bound(const GridFunction& U, const SlopedRect& rect, const Rational& M);

}  // namespace dhl
