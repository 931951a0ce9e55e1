#pragma once

// Scalar arithmetic over four kinds of numbers:
//   rational        exact, GMP mpq (always canonical: lowest terms, den > 0)
//   quadratic(d)    x + y*sqrt(d) with rational x, y and square-free d > 1
//   float(bits)     MPFR binary float, round-to-nearest-even
//   complex(bits)   pair of float(bits)
//
// Arithmetic is closed within one kind. Mixing kinds throws; conversions are
// explicit (Scalar::from_rational, to_float). The only cross-kind relation
// that is allowed is equality/ordering between a rational and a quadratic
// value, so that x + 0*sqrt(d) == x.

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <string_view>
#include <variant>

namespace dhl {

using Rational = mpq_class;
using Integer = mpz_class;

class ScalarKind {
 public:
  enum class Tag { Rational, Quadratic, Float, Complex };

  ScalarKind() = default;
  static ScalarKind rational() { return ScalarKind(Tag::Rational, 0, 0); }
  static ScalarKind quadratic(long d);
  static ScalarKind floating(unsigned bits);
  static ScalarKind complex(unsigned bits);
  /// Parses "rational", "quadratic(3)", "float(256)", "complex(128)".
  static ScalarKind parse(std::string_view text);

  Tag tag() const { return tag_; }
  long radicand() const { return d_; }
  unsigned precision() const { return bits_; }
  bool exact() const { return tag_ == Tag::Rational || tag_ == Tag::Quadratic; }
  bool real() const { return tag_ != Tag::Complex; }
  std::string name() const;

  friend bool operator==(const ScalarKind&, const ScalarKind&) = default;

 private:
  ScalarKind(Tag t, long d, unsigned bits) : tag_(t), d_(d), bits_(bits) {}
  Tag tag_ = Tag::Rational;
  long d_ = 0;
  unsigned bits_ = 0;
};

bool is_square_free(long d);

/// RAII wrapper around mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(unsigned bits = 53);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  unsigned precision() const { return static_cast<unsigned>(mpfr_get_prec(v_)); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

struct Quadratic {
  Rational x;
  Rational y;
  long d = 0;
};

struct BigComplex {
  BigFloat re;
  BigFloat im;
};

class Scalar {
 public:
  Scalar() : v_(Rational(0)) {}
  explicit Scalar(Rational q);
  Scalar(Rational x, Rational y, long d);
  explicit Scalar(BigFloat f) : v_(std::move(f)) {}
  Scalar(BigFloat re, BigFloat im) : v_(BigComplex{std::move(re), std::move(im)}) {}

  static Scalar zero(const ScalarKind& kind) { return from_integer(0, kind); }
  static Scalar one(const ScalarKind& kind) { return from_integer(1, kind); }
  static Scalar from_integer(long v, const ScalarKind& kind);
  /// Exact embedding for exact kinds, correctly rounded for float kinds.
  static Scalar from_rational(const Rational& q, const ScalarKind& kind);
  static Scalar from_double(double v, const ScalarKind& kind);

  ScalarKind kind() const;
  bool is_zero() const;

  const Rational& as_rational() const;
  const Quadratic& as_quadratic() const;
  const BigFloat& as_float() const;
  const BigComplex& as_complex() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b);

  /// Canonical text in the scalar grammar; parse_scalar(str(), kind()) gives back
  /// the identical value.
  std::string str() const;

 private:
  std::variant<Rational, Quadratic, BigFloat, BigComplex> v_;
};

/// Three-way comparison of real scalars (rational/quadratic may be mixed).
int compare(const Scalar& a, const Scalar& b);
int sign(const Scalar& a);
/// |a|; for complex kinds the modulus as float of the same precision.
Scalar abs(const Scalar& a);
Scalar pow(const Scalar& a, unsigned long e);
/// |a| <= t, with t of the same real kind as |a|.
bool abs_le(const Scalar& a, const Scalar& t);

Scalar parse_scalar(std::string_view text, const ScalarKind& kind);
Rational parse_rational(std::string_view text);

/// Nearest float of the given precision (ties to even). Exact kinds only.
Scalar to_float(const Scalar& s, unsigned bits);
/// Nearest double (real kinds; complex -> modulus).
double to_double(const Scalar& s);
/// Natural log of |s| computed at 256 bits; -inf for zero. Never overflows.
double log_abs(const Scalar& s);

/// Exact rational value of a finite float.
Rational exact_rational(const BigFloat& f);

/// Tolerances for float kinds; exact kinds always compare with zero tolerance.
struct ToleranceProfile {
  double abs_tol = 0.0;
  double rel_tol = 0.0;
  /// True when |residual| is within tolerance relative to `scale`.
  bool accepts(double residual, double scale) const;
};

}  // namespace dhl
