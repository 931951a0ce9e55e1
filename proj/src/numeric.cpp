#include "dhl/numeric.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "dhl/error.hpp"

namespace dhl {

namespace {

constexpr unsigned kLogBits = 256;

std::string_view trim(std::string_view t) {
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
  return t;
}

bool all_digits(std::string_view t) {
  if (t.empty()) return false;
  for (char c : t)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer parse_integer(std::string_view t) {
  std::string_view body = t;
  if (!body.empty() && (body.front() == '+' || body.front() == '-')) body.remove_prefix(1);
  if (!all_digits(body)) throw precondition_error("malformed integer '" + std::string(t) + "'");
  std::string s(t.front() == '+' ? t.substr(1) : t);
  return Integer(s, 10);
}

Rational parse_decimal(std::string_view t) {
  bool neg = false;
  if (!t.empty() && (t.front() == '+' || t.front() == '-')) {
    neg = t.front() == '-';
    t.remove_prefix(1);
  }
  long exp10 = 0;
  auto e = t.find_first_of("eE");
  if (e != std::string_view::npos) {
    std::string_view ex = t.substr(e + 1);
    std::string_view body = ex;
    if (!body.empty() && (body.front() == '+' || body.front() == '-')) body.remove_prefix(1);
    if (!all_digits(body) || body.size() > 9)
      throw precondition_error("malformed exponent in '" + std::string(t) + "'");
    exp10 = std::stol(std::string(ex));
    t = t.substr(0, e);
  }
  std::string digits;
  auto dot = t.find('.');
  if (dot != std::string_view::npos) {
    std::string_view ip = t.substr(0, dot), fp = t.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
      throw precondition_error("malformed decimal '" + std::string(t) + "'");
    digits = std::string(ip) + std::string(fp);
    exp10 -= static_cast<long>(fp.size());
  } else {
    if (!all_digits(t)) throw precondition_error("malformed decimal '" + std::string(t) + "'");
    digits = std::string(t);
  }
  Rational q(Integer(digits, 10));
  Integer p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  if (exp10 >= 0)
    q *= p10;
  else
    q /= p10;
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

// sign of x + y*sqrt(d)
int quad_sign(const Rational& x, const Rational& y, long d) {
  int sx = sgn(x), sy = sgn(y);
  if (sy == 0) return sx;
  if (sx == 0 || sx == sy) return sy;
  Rational lhs = x * x;
  Rational rhs = y * y * d;
  return cmp(lhs, rhs) > 0 ? sx : sy;
}

std::string float_str(mpfr_srcptr x) {
  if (mpfr_nan_p(x)) return "nan";
  if (mpfr_inf_p(x)) return mpfr_signbit(x) ? "-inf" : "inf";
  if (mpfr_zero_p(x)) return mpfr_signbit(x) ? "-0" : "0";
  mpfr_exp_t e = 0;
  char* raw = mpfr_get_str(nullptr, &e, 10, 0, x, MPFR_RNDN);
  std::string digits(raw);
  mpfr_free_str(raw);
  bool neg = digits.front() == '-';
  if (neg) digits.erase(0, 1);
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  std::string out = neg ? "-" : "";
  out += digits[0];
  if (digits.size() > 1) out += "." + digits.substr(1);
  out += "e" + std::to_string(static_cast<long>(e) - 1);
  return out;
}

BigFloat parse_float(std::string_view t, unsigned bits) {
  BigFloat f(bits);
  if (t.find('/') != std::string_view::npos) {
    Rational q = parse_rational(t);
    mpfr_set_q(f.get(), q.get_mpq_t(), MPFR_RNDN);
    return f;
  }
  std::string s(t);
  if (s.empty()) throw precondition_error("empty float literal");
  char* end = nullptr;
  mpfr_strtofr(f.get(), s.c_str(), &end, 10, MPFR_RNDN);
  if (end != s.c_str() + s.size()) throw precondition_error("malformed float '" + s + "'");
  return f;
}

void check_same(const ScalarKind& a, const ScalarKind& b, const char* op) {
  if (!(a == b))
    throw precondition_error(std::string("cross-kind ") + op + ": " + a.name() + " vs " + b.name() +
                             " (convert explicitly)");
}

BigFloat rational_to_float(const Rational& q, unsigned bits) {
  BigFloat f(bits);
  mpfr_set_q(f.get(), q.get_mpq_t(), MPFR_RNDN);
  return f;
}

BigFloat quadratic_to_float(const Quadratic& v, unsigned bits) {
  if (v.y == 0) return rational_to_float(v.x, bits);
  BigFloat r(bits);
  for (unsigned work = bits + 64;; work *= 2) {
    BigFloat s(work), t(work);
    mpfr_sqrt_ui(s.get(), static_cast<unsigned long>(v.d), MPFR_RNDN);
    mpfr_set_q(t.get(), v.y.get_mpq_t(), MPFR_RNDN);
    mpfr_mul(s.get(), s.get(), t.get(), MPFR_RNDN);
    mpfr_set_q(t.get(), v.x.get_mpq_t(), MPFR_RNDN);
    mpfr_add(s.get(), s.get(), t.get(), MPFR_RNDN);
    mpfr_set(r.get(), s.get(), MPFR_RNDN);
    if (mpfr_zero_p(r.get()) || !mpfr_number_p(r.get())) continue;
    BigFloat lo(r), hi(r);
    mpfr_nextbelow(lo.get());
    mpfr_nextabove(hi.get());
    Rational rq = exact_rational(r);
    Rational lo_mid = (exact_rational(lo) + rq) / 2;
    Rational hi_mid = (exact_rational(hi) + rq) / 2;
    Rational dx_lo = v.x - lo_mid, dx_hi = v.x - hi_mid;
    if (quad_sign(dx_lo, v.y, v.d) > 0 && quad_sign(dx_hi, v.y, v.d) < 0) return r;
  }
}

BigFloat real_to_bigfloat(const Scalar& s, unsigned bits) {
  switch (s.kind().tag()) {
    case ScalarKind::Tag::Rational:
      return rational_to_float(s.as_rational(), bits);
    case ScalarKind::Tag::Quadratic:
      return quadratic_to_float(s.as_quadratic(), bits);
    case ScalarKind::Tag::Float: {
      BigFloat f(bits);
      mpfr_set(f.get(), s.as_float().get(), MPFR_RNDN);
      return f;
    }
    case ScalarKind::Tag::Complex: {
      BigFloat f(bits);
      mpfr_hypot(f.get(), s.as_complex().re.get(), s.as_complex().im.get(), MPFR_RNDN);
      return f;
    }
  }
  return BigFloat(bits);
}

}  // namespace

// ---------------------------------------------------------------- ScalarKind

bool is_square_free(long d) {
  if (d < 2) return false;
  for (long p = 2; p * p <= d; ++p)
    if (d % (p * p) == 0) return false;
  return true;
}

ScalarKind ScalarKind::quadratic(long d) {
  require(is_square_free(d), "quadratic radicand must be a square-free integer > 1, got " + std::to_string(d));
  return ScalarKind(Tag::Quadratic, d, 0);
}

ScalarKind ScalarKind::floating(unsigned bits) {
  require(bits >= 2 && bits <= (1u << 20), "float precision out of range");
  return ScalarKind(Tag::Float, 0, bits);
}

ScalarKind ScalarKind::complex(unsigned bits) {
  require(bits >= 2 && bits <= (1u << 20), "complex precision out of range");
  return ScalarKind(Tag::Complex, 0, bits);
}

ScalarKind ScalarKind::parse(std::string_view text) {
  text = trim(text);
  if (text == "rational") return rational();
  auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')')
    throw precondition_error("unknown scalar kind '" + std::string(text) + "'");
  std::string_view head = text.substr(0, open);
  std::string_view arg = text.substr(open + 1, text.size() - open - 2);
  if (!all_digits(arg) || arg.size() > 9)
    throw precondition_error("bad scalar kind argument in '" + std::string(text) + "'");
  long v = std::stol(std::string(arg));
  if (head == "quadratic") return quadratic(v);
  if (head == "float") return floating(static_cast<unsigned>(v));
  if (head == "complex") return complex(static_cast<unsigned>(v));
  throw precondition_error("unknown scalar kind '" + std::string(text) + "'");
}

std::string ScalarKind::name() const {
  switch (tag_) {
    case Tag::Rational:
      return "rational";
    case Tag::Quadratic:
      return "quadratic(" + std::to_string(d_) + ")";
    case Tag::Float:
      return "float(" + std::to_string(bits_) + ")";
    case Tag::Complex:
      return "complex(" + std::to_string(bits_) + ")";
  }
  return "?";
}

// ------------------------------------------------------------------ BigFloat

BigFloat::BigFloat(unsigned bits) {
  mpfr_init2(v_, static_cast<mpfr_prec_t>(bits));
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

Rational exact_rational(const BigFloat& f) {
  require(mpfr_number_p(f.get()) != 0, "non-finite float has no rational value");
  if (mpfr_zero_p(f.get())) return Rational(0);
  Integer z;
  mpfr_exp_t e = mpfr_get_z_2exp(z.get_mpz_t(), f.get());
  Rational q(z);
  if (e > 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else if (e < 0) {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return q;
}

// -------------------------------------------------------------------- Scalar

Scalar::Scalar(Rational q) : v_(std::move(q)) { std::get<Rational>(v_).canonicalize(); }

Scalar::Scalar(Rational x, Rational y, long d) {
  require(is_square_free(d), "quadratic radicand must be square-free > 1");
  x.canonicalize();
  y.canonicalize();
  v_ = Quadratic{std::move(x), std::move(y), d};
}

Scalar Scalar::from_integer(long v, const ScalarKind& kind) { return from_rational(Rational(v), kind); }

Scalar Scalar::from_rational(const Rational& q, const ScalarKind& kind) {
  switch (kind.tag()) {
    case ScalarKind::Tag::Rational:
      return Scalar(q);
    case ScalarKind::Tag::Quadratic:
      return Scalar(q, Rational(0), kind.radicand());
    case ScalarKind::Tag::Float:
      return Scalar(rational_to_float(q, kind.precision()));
    case ScalarKind::Tag::Complex:
      return Scalar(rational_to_float(q, kind.precision()), BigFloat(kind.precision()));
  }
  return Scalar();
}

Scalar Scalar::from_double(double v, const ScalarKind& kind) {
  if (!kind.exact()) {
    BigFloat f(kind.precision());
    mpfr_set_d(f.get(), v, MPFR_RNDN);
    if (kind.tag() == ScalarKind::Tag::Float) return Scalar(std::move(f));
    return Scalar(std::move(f), BigFloat(kind.precision()));
  }
  require(std::isfinite(v), "cannot embed non-finite double in an exact kind");
  Rational q(v);
  return from_rational(q, kind);
}

ScalarKind Scalar::kind() const {
  switch (v_.index()) {
    case 0:
      return ScalarKind::rational();
    case 1:
      return ScalarKind::quadratic(std::get<Quadratic>(v_).d);
    case 2:
      return ScalarKind::floating(std::get<BigFloat>(v_).precision());
    default:
      return ScalarKind::complex(std::get<BigComplex>(v_).re.precision());
  }
}

bool Scalar::is_zero() const {
  switch (v_.index()) {
    case 0:
      return sgn(std::get<Rational>(v_)) == 0;
    case 1:
      return sgn(std::get<Quadratic>(v_).x) == 0 && sgn(std::get<Quadratic>(v_).y) == 0;
    case 2:
      return mpfr_zero_p(std::get<BigFloat>(v_).get()) != 0;
    default:
      return mpfr_zero_p(std::get<BigComplex>(v_).re.get()) && mpfr_zero_p(std::get<BigComplex>(v_).im.get());
  }
}

const Rational& Scalar::as_rational() const {
  if (auto* p = std::get_if<Rational>(&v_)) return *p;
  throw precondition_error("expected a rational scalar, got " + kind().name());
}
const Quadratic& Scalar::as_quadratic() const {
  if (auto* p = std::get_if<Quadratic>(&v_)) return *p;
  throw precondition_error("expected a quadratic scalar, got " + kind().name());
}
const BigFloat& Scalar::as_float() const {
  if (auto* p = std::get_if<BigFloat>(&v_)) return *p;
  throw precondition_error("expected a float scalar, got " + kind().name());
}
const BigComplex& Scalar::as_complex() const {
  if (auto* p = std::get_if<BigComplex>(&v_)) return *p;
  throw precondition_error("expected a complex scalar, got " + kind().name());
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  switch (r.v_.index()) {
    case 0:
      mpq_neg(std::get<Rational>(r.v_).get_mpq_t(), std::get<Rational>(r.v_).get_mpq_t());
      break;
    case 1: {
      auto& q = std::get<Quadratic>(r.v_);
      q.x = -q.x;
      q.y = -q.y;
      break;
    }
    case 2:
      mpfr_neg(std::get<BigFloat>(r.v_).get(), std::get<BigFloat>(r.v_).get(), MPFR_RNDN);
      break;
    default: {
      auto& c = std::get<BigComplex>(r.v_);
      mpfr_neg(c.re.get(), c.re.get(), MPFR_RNDN);
      mpfr_neg(c.im.get(), c.im.get(), MPFR_RNDN);
    }
  }
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same(kind(), o.kind(), "addition");
  switch (v_.index()) {
    case 0:
      std::get<Rational>(v_) += std::get<Rational>(o.v_);
      break;
    case 1: {
      auto& a = std::get<Quadratic>(v_);
      const auto& b = std::get<Quadratic>(o.v_);
      a.x += b.x;
      a.y += b.y;
      break;
    }
    case 2:
      mpfr_add(std::get<BigFloat>(v_).get(), std::get<BigFloat>(v_).get(), std::get<BigFloat>(o.v_).get(),
               MPFR_RNDN);
      break;
    default: {
      auto& a = std::get<BigComplex>(v_);
      const auto& b = std::get<BigComplex>(o.v_);
      mpfr_add(a.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
      mpfr_add(a.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    }
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same(kind(), o.kind(), "multiplication");
  switch (v_.index()) {
    case 0:
      std::get<Rational>(v_) *= std::get<Rational>(o.v_);
      break;
    case 1: {
      auto& a = std::get<Quadratic>(v_);
      const auto& b = std::get<Quadratic>(o.v_);
      Rational x = a.x * b.x + a.y * b.y * a.d;
      Rational y = a.x * b.y + a.y * b.x;
      a.x = std::move(x);
      a.y = std::move(y);
      break;
    }
    case 2:
      mpfr_mul(std::get<BigFloat>(v_).get(), std::get<BigFloat>(v_).get(), std::get<BigFloat>(o.v_).get(),
               MPFR_RNDN);
      break;
    default: {
      auto& a = std::get<BigComplex>(v_);
      const auto& b = std::get<BigComplex>(o.v_);
      unsigned bits = a.re.precision();
      BigFloat t1(bits), t2(bits), re(bits), im(bits);
      mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
      mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
      mpfr_sub(re.get(), t1.get(), t2.get(), MPFR_RNDN);
      mpfr_mul(t1.get(), a.re.get(), b.im.get(), MPFR_RNDN);
      mpfr_mul(t2.get(), a.im.get(), b.re.get(), MPFR_RNDN);
      mpfr_add(im.get(), t1.get(), t2.get(), MPFR_RNDN);
      a.re = std::move(re);
      a.im = std::move(im);
    }
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_same(kind(), o.kind(), "division");
  switch (v_.index()) {
    case 0:
      require(sgn(std::get<Rational>(o.v_)) != 0, "division by zero");
      std::get<Rational>(v_) /= std::get<Rational>(o.v_);
      break;
    case 1: {
      const auto& b = std::get<Quadratic>(o.v_);
      Rational norm = b.x * b.x - b.y * b.y * b.d;
      require(sgn(norm) != 0, "division by zero");
      Scalar conj(b.x / norm, -b.y / norm, b.d);
      *this *= conj;
      break;
    }
    case 2:
      mpfr_div(std::get<BigFloat>(v_).get(), std::get<BigFloat>(v_).get(), std::get<BigFloat>(o.v_).get(),
               MPFR_RNDN);
      break;
    default: {
      const auto& b = std::get<BigComplex>(o.v_);
      unsigned bits = b.re.precision();
      BigFloat den(bits), t(bits);
      mpfr_sqr(den.get(), b.re.get(), MPFR_RNDN);
      mpfr_sqr(t.get(), b.im.get(), MPFR_RNDN);
      mpfr_add(den.get(), den.get(), t.get(), MPFR_RNDN);
      BigFloat cre(bits), cim(bits);
      mpfr_div(cre.get(), b.re.get(), den.get(), MPFR_RNDN);
      mpfr_div(cim.get(), b.im.get(), den.get(), MPFR_RNDN);
      mpfr_neg(cim.get(), cim.get(), MPFR_RNDN);
      *this *= Scalar(std::move(cre), std::move(cim));
    }
  }
  return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
  auto ta = a.kind().tag(), tb = b.kind().tag();
  using T = ScalarKind::Tag;
  if ((ta == T::Rational || ta == T::Quadratic) && (tb == T::Rational || tb == T::Quadratic)) {
    if (ta == T::Quadratic && tb == T::Quadratic && a.as_quadratic().d != b.as_quadratic().d) return false;
    return compare(a, b) == 0;
  }
  if (!(a.kind() == b.kind())) return false;
  if (ta == T::Float) return mpfr_equal_p(a.as_float().get(), b.as_float().get()) != 0;
  return mpfr_equal_p(a.as_complex().re.get(), b.as_complex().re.get()) &&
         mpfr_equal_p(a.as_complex().im.get(), b.as_complex().im.get());
}

std::string Scalar::str() const {
  switch (v_.index()) {
    case 0:
      return std::get<Rational>(v_).get_str();
    case 1: {
      const auto& q = std::get<Quadratic>(v_);
      if (sgn(q.y) == 0) return q.x.get_str();
      Rational ay = abs(q.y);
      return q.x.get_str() + (sgn(q.y) > 0 ? "+" : "-") + ay.get_str() + "*sqrt(" + std::to_string(q.d) + ")";
    }
    case 2:
      return float_str(std::get<BigFloat>(v_).get());
    default: {
      const auto& c = std::get<BigComplex>(v_);
      BigFloat im_abs(c.im);
      mpfr_abs(im_abs.get(), c.im.get(), MPFR_RNDN);
      bool neg = mpfr_signbit(c.im.get()) != 0 && !mpfr_nan_p(c.im.get());
      return float_str(c.re.get()) + (neg ? "-" : "+") + float_str(im_abs.get()) + "i";
    }
  }
}

// ------------------------------------------------------------- free functions

int compare(const Scalar& a, const Scalar& b) {
  using T = ScalarKind::Tag;
  auto ta = a.kind().tag(), tb = b.kind().tag();
  if (ta == T::Rational && tb == T::Rational) return cmp(a.as_rational(), b.as_rational()) > 0   ? 1
                                                     : cmp(a.as_rational(), b.as_rational()) < 0 ? -1
                                                                                                 : 0;
  if ((ta == T::Rational || ta == T::Quadratic) && (tb == T::Rational || tb == T::Quadratic)) {
    Rational ax = ta == T::Rational ? a.as_rational() : a.as_quadratic().x;
    Rational ay = ta == T::Rational ? Rational(0) : a.as_quadratic().y;
    Rational bx = tb == T::Rational ? b.as_rational() : b.as_quadratic().x;
    Rational by = tb == T::Rational ? Rational(0) : b.as_quadratic().y;
    long d = ta == T::Quadratic ? a.as_quadratic().d : b.as_quadratic().d;
    if (ta == T::Quadratic && tb == T::Quadratic && a.as_quadratic().d != b.as_quadratic().d)
      throw precondition_error("cannot compare quadratic values with different radicands");
    return quad_sign(ax - bx, ay - by, d);
  }
  if (ta == T::Float && tb == T::Float) return mpfr_cmp(a.as_float().get(), b.as_float().get());
  throw precondition_error("cannot order " + a.kind().name() + " against " + b.kind().name());
}

int sign(const Scalar& a) {
  switch (a.kind().tag()) {
    case ScalarKind::Tag::Rational:
      return sgn(a.as_rational());
    case ScalarKind::Tag::Quadratic:
      return quad_sign(a.as_quadratic().x, a.as_quadratic().y, a.as_quadratic().d);
    case ScalarKind::Tag::Float:
      return mpfr_sgn(a.as_float().get());
    case ScalarKind::Tag::Complex:
      break;
  }
  throw precondition_error("complex scalars have no sign");
}

Scalar abs(const Scalar& a) {
  if (a.kind().tag() == ScalarKind::Tag::Complex) {
    BigFloat m(a.kind().precision());
    mpfr_hypot(m.get(), a.as_complex().re.get(), a.as_complex().im.get(), MPFR_RNDN);
    return Scalar(std::move(m));
  }
  return sign(a) < 0 ? -a : a;
}

Scalar pow(const Scalar& a, unsigned long e) {
  Scalar result = Scalar::one(a.kind());
  Scalar base = a;
  while (e > 0) {
    if (e & 1UL) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

bool abs_le(const Scalar& a, const Scalar& t) { return compare(abs(a), t) <= 0; }

Rational parse_rational(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw precondition_error("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) throw precondition_error("malformed denominator in '" + std::string(text) + "'");
    Integer den(std::string(den_text), 10);
    if (den == 0) throw precondition_error("zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  if (text.find_first_of(".eE") != std::string_view::npos) return parse_decimal(text);
  return Rational(parse_integer(text));
}

Scalar parse_scalar(std::string_view text, const ScalarKind& kind) {
  text = trim(text);
  switch (kind.tag()) {
    case ScalarKind::Tag::Rational:
      return Scalar(parse_rational(text));
    case ScalarKind::Tag::Quadratic: {
      auto star = text.find("*sqrt(");
      if (star == std::string_view::npos) return Scalar(parse_rational(text), Rational(0), kind.radicand());
      if (text.back() != ')') throw precondition_error("malformed quadratic '" + std::string(text) + "'");
      std::string_view dtext = text.substr(star + 6, text.size() - star - 7);
      if (!all_digits(dtext)) throw precondition_error("malformed radicand in '" + std::string(text) + "'");
      long d = std::stol(std::string(dtext));
      if (d != kind.radicand())
        throw precondition_error("radicand mismatch: text has sqrt(" + std::to_string(d) + "), kind is " +
                                 kind.name());
      std::string_view prefix = text.substr(0, star);
      std::size_t split = std::string_view::npos;
      for (std::size_t i = prefix.size(); i-- > 1;) {
        if ((prefix[i] == '+' || prefix[i] == '-') &&
            (std::isdigit(static_cast<unsigned char>(prefix[i - 1])) || prefix[i - 1] == '.')) {
          split = i;
          break;
        }
      }
      Rational x(0);
      std::string_view ytext = prefix;
      if (split != std::string_view::npos) {
        x = parse_rational(prefix.substr(0, split));
        ytext = prefix.substr(split);
        if (ytext.size() > 1 && ytext[0] == '+' && (ytext[1] == '-' || ytext[1] == '+')) ytext.remove_prefix(1);
      }
      return Scalar(x, parse_rational(ytext), d);
    }
    case ScalarKind::Tag::Float:
      return Scalar(parse_float(text, kind.precision()));
    case ScalarKind::Tag::Complex: {
      unsigned bits = kind.precision();
      if (text.empty()) throw precondition_error("empty complex literal");
      if (text.back() != 'i' || text == "inf" || text == "-inf")
        return Scalar(parse_float(text, bits), BigFloat(bits));
      std::string_view body = text.substr(0, text.size() - 1);
      std::size_t split = std::string_view::npos;
      for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
          split = i;
          break;
        }
      }
      if (split == std::string_view::npos) return Scalar(BigFloat(bits), parse_float(body, bits));
      std::string_view im = body.substr(split);
      if (im.front() == '+') im.remove_prefix(1);
      return Scalar(parse_float(body.substr(0, split), bits), parse_float(im, bits));
    }
  }
  throw precondition_error("unknown scalar kind");
}

Scalar to_float(const Scalar& s, unsigned bits) {
  require(s.kind().exact(), "to_float expects a rational or quadratic scalar");
  require(bits >= 2, "float precision must be at least 2 bits");
  if (s.kind().tag() == ScalarKind::Tag::Rational) return Scalar(rational_to_float(s.as_rational(), bits));
  return Scalar(quadratic_to_float(s.as_quadratic(), bits));
}

double to_double(const Scalar& s) {
  BigFloat f = real_to_bigfloat(s, 53);
  return mpfr_get_d(f.get(), MPFR_RNDN);
}

double log_abs(const Scalar& s) {
  if (s.is_zero()) return -std::numeric_limits<double>::infinity();
  BigFloat f = real_to_bigfloat(s, kLogBits);
  mpfr_abs(f.get(), f.get(), MPFR_RNDN);
  mpfr_log(f.get(), f.get(), MPFR_RNDN);
  return mpfr_get_d(f.get(), MPFR_RNDN);
}

bool ToleranceProfile::accepts(double residual, double scale) const {
  return std::fabs(residual) <= abs_tol + rel_tol * std::fabs(scale);
}

}  // namespace dhl
