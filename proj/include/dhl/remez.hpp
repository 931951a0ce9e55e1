#pragma once

// Remez-type inequalities over exact rational polynomials, and a certified
// maximum of |p| on an interval.

#include <string>
#include <vector>

#include "dhl/numeric.hpp"

namespace dhl {

struct Polynomial {
  std::vector<Rational> c;  // c[0] + c[1] x + ...

  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  /// Comma-separated coefficient strings, constant term first.
  static Polynomial parse(const std::string& text);

  int degree() const;  // -1 for the zero polynomial
  bool is_zero() const { return degree() < 0; }
  Rational eval(const Rational& x) const;
  double eval(double x) const;
  Polynomial derivative() const;
  std::string str() const;
  void trim();
};

struct Interval {
  Rational lo;
  Rational hi;
  Rational length() const { return hi - lo; }
};

struct PolyMax {
  Rational certified_upper;  // >= max over I of |p|
  Rational attained;         // |p(argmax)|, <= max over I of |p|
  Rational argmax;
  int critical_points = 0;
};

/// Certified max of |p| on I (lo <= hi), degree <= 64. Critical points are
/// isolated exactly (Sturm sequence of the square-free part of p') and
/// refined to width 1e-12 |I|.
PolyMax poly_max(const Polynomial& p, const Interval& I);

/// (4|I|/|E|)^d * sup_on_E, E a finite union of closed subintervals of I.
Rational remez_bound(const Polynomial& p, const Interval& I, const std::vector<Interval>& E,
                     const Rational& sup_on_E);

/// (4|I|/l)^d * M with l = #pts - d >= 1; pts distinct integers inside I.
Rational remez_bound_discrete(const Polynomial& p, const Interval& I, const std::vector<Rational>& pts,
                              const Rational& M);

/// (4|I|/l)^d.
Rational discrete_remez_factor(int d, const Rational& length, long l);

}  // namespace dhl
