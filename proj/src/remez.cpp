#include "dhl/remez.hpp"

#include <algorithm>
#include <sstream>

#include "dhl/error.hpp"

namespace dhl {

namespace {

using Poly = std::vector<Rational>;

void trim_poly(Poly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

int deg(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly derive(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim_poly(d);
  return d;
}

void make_monic(Poly& p) {
  if (p.empty()) return;
  Rational lead = p.back();
  for (auto& c : p) c /= lead;
}

/// remainder of a / b (b nonzero)
Poly poly_rem(Poly a, const Poly& b) {
  trim_poly(a);
  const int db = deg(b);
  while (deg(a) >= db) {
    Rational f = a.back() / b.back();
    int shift = deg(a) - db;
    for (int i = 0; i <= db; ++i) a[static_cast<std::size_t>(i + shift)] -= f * b[static_cast<std::size_t>(i)];
    a.pop_back();
    trim_poly(a);
  }
  return a;
}

Poly poly_div(Poly a, const Poly& b) {
  trim_poly(a);
  const int db = deg(b);
  if (deg(a) < db) return {};
  Poly q(static_cast<std::size_t>(deg(a) - db + 1));
  while (deg(a) >= db) {
    Rational f = a.back() / b.back();
    int shift = deg(a) - db;
    q[static_cast<std::size_t>(shift)] = f;
    for (int i = 0; i <= db; ++i) a[static_cast<std::size_t>(i + shift)] -= f * b[static_cast<std::size_t>(i)];
    a.pop_back();
    trim_poly(a);
  }
  return q;
}

Poly poly_gcd(Poly a, Poly b) {
  trim_poly(a);
  trim_poly(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
    make_monic(b);
  }
  make_monic(a);
  return a;
}

/// Integer polynomial with the same sign behaviour (positive scaling).
std::vector<Integer> primitive(const Poly& p) {
  Integer l = 1;
  for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& c : p) {
    Integer v = c.get_num() * (l / c.get_den());
    out.push_back(v);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  if (g > 1)
    for (auto& v : out) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  return out;
}

/// sign of an integer polynomial at x = num/den, den > 0
int sign_at(const std::vector<Integer>& p, const Rational& x) {
  if (p.empty()) return 0;
  const Integer& num = x.get_num();
  const Integer& den = x.get_den();
  Integer h = p.back();
  Integer dp = 1;
  for (std::size_t i = p.size() - 1; i-- > 0;) {
    dp *= den;
    h = h * num + p[i] * dp;
  }
  return sgn(h);
}

struct Sturm {
  std::vector<std::vector<Integer>> seq;

  explicit Sturm(const Poly& q) {
    Poly a = q, b = derive(q);
    seq.push_back(primitive(a));
    while (!b.empty()) {
      seq.push_back(primitive(b));
      Poly r = poly_rem(a, b);
      for (auto& c : r) c = -c;
      a = std::move(b);
      b = std::move(r);
    }
  }

  int variations(const Rational& x) const {
    int v = 0, last = 0;
    for (const auto& s : seq) {
      int sg = sign_at(s, x);
      if (sg == 0) continue;
      if (last != 0 && sg != last) ++v;
      last = sg;
    }
    return v;
  }
};

Rational abs_q(const Rational& x) { return sgn(x) < 0 ? Rational(-x) : x; }

/// sup of |p''| on [a, b] by coefficient magnitudes
Rational second_derivative_bound(const Poly& p, const Rational& a, const Rational& b) {
  Poly dd = derive(derive(p));
  Rational r = std::max(abs_q(a), abs_q(b));
  Rational acc = 0, pw = 1;
  for (const auto& c : dd) {
    acc += abs_q(c) * pw;
    pw *= r;
  }
  return acc;
}

}  // namespace

Polynomial::Polynomial(std::vector<Rational> coeffs) : c(std::move(coeffs)) {
  for (auto& v : c) v.canonicalize();
  trim();
}

void Polynomial::trim() { trim_poly(c); }

Polynomial Polynomial::parse(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  require(!out.empty(), "empty polynomial");
  return Polynomial(std::move(out));
}

int Polynomial::degree() const { return deg(c); }

Rational Polynomial::eval(const Rational& x) const {
  Rational acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

double Polynomial::eval(double x) const {
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i].get_d();
  return acc;
}

Polynomial Polynomial::derivative() const { return Polynomial(derive(c)); }

std::string Polynomial::str() const {
  if (c.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ",";
    out += c[i].get_str();
  }
  return out;
}

PolyMax poly_max(const Polynomial& p, const Interval& I) {
  require(I.lo <= I.hi, "interval needs lo <= hi");
  require(p.degree() <= 64, "poly_max supports degree <= 64");
  PolyMax out;
  auto consider = [&](const Rational& x, const Rational& value, const Rational& upper) {
    if (value > out.attained) {
      out.attained = value;
      out.argmax = x;
    }
    if (upper > out.certified_upper) out.certified_upper = upper;
  };
  Rational vlo = abs_q(p.eval(I.lo));
  out.attained = vlo;
  out.argmax = I.lo;
  out.certified_upper = vlo;
  Rational vhi = abs_q(p.eval(I.hi));
  consider(I.hi, vhi, vhi);
  if (p.degree() <= 1 || I.lo == I.hi) return out;

  Poly d1 = derive(p.c);
  Poly g = poly_gcd(d1, derive(d1));
  Poly q = deg(g) > 0 ? poly_div(d1, g) : d1;
  make_monic(q);
  auto qi = primitive(q);
  auto dqi = primitive(derive(q));
  Sturm st(q);

  auto count_open = [&](const Rational& a, const Rational& b) {
    return st.variations(a) - st.variations(b) - (sign_at(qi, b) == 0 ? 1 : 0);
  };
  const Rational eps = I.length() / Rational(Integer(1) << 40);

  std::vector<std::pair<Rational, Rational>> isolated;
  std::vector<Rational> exact_roots;
  std::vector<std::tuple<Rational, Rational, int>> stack;
  int total = count_open(I.lo, I.hi);
  if (total > 0) stack.emplace_back(I.lo, I.hi, total);
  while (!stack.empty()) {
    auto [a, b, cnt] = stack.back();
    stack.pop_back();
    if (cnt == 1) {
      isolated.emplace_back(a, b);
      continue;
    }
    Rational mid = (a + b) / 2;
    if (sign_at(qi, mid) == 0) exact_roots.push_back(mid);
    int left = count_open(a, mid);
    int right = count_open(mid, b);
    if (right > 0) stack.emplace_back(mid, b, right);
    if (left > 0) stack.emplace_back(a, mid, left);
  }

  for (const auto& r : exact_roots) {
    Rational v = abs_q(p.eval(r));
    ++out.critical_points;
    consider(r, v, v);
  }
  for (auto [a, b] : isolated) {
    int sa = sign_at(qi, a);
    if (sa == 0) sa = sign_at(dqi, a);
    bool exact = false;
    while (b - a > eps) {
      Rational mid = (a + b) / 2;
      int sm = sign_at(qi, mid);
      if (sm == 0) {
        a = b = mid;
        exact = true;
        break;
      }
      if (sm == sa)
        a = mid;
      else
        b = mid;
    }
    ++out.critical_points;
    if (exact) {
      Rational v = abs_q(p.eval(a));
      consider(a, v, v);
      continue;
    }
    Rational c = (a + b) / 2;
    Rational w = b - a;
    Rational v = abs_q(p.eval(c));
    Rational upper = v + second_derivative_bound(p.c, a, b) * w * w / 8;
    consider(c, v, upper);
  }
  return out;
}

Rational discrete_remez_factor(int d, const Rational& length, long l) {
  require(l >= 1, "Remez factor needs l >= 1");
  require(d >= 0, "Remez factor needs d >= 0");
  Rational base = 4 * length / l;
  Rational out = 1;
  for (int i = 0; i < d; ++i) out *= base;
  return out;
}

Rational remez_bound(const Polynomial& p, const Interval& I, const std::vector<Interval>& E,
                     const Rational& sup_on_E) {
  require(I.lo <= I.hi, "interval needs lo <= hi");
  require(!E.empty(), "E must be nonempty");
  require(sgn(sup_on_E) >= 0, "sup over E must be nonnegative");
  std::vector<Interval> parts = E;
  for (const auto& e : parts) {
    require(e.lo <= e.hi, "E subinterval needs lo <= hi");
    require(I.lo <= e.lo && e.hi <= I.hi, "E must lie inside I");
  }
  std::sort(parts.begin(), parts.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  Rational measure = 0;
  Rational cur_lo = parts[0].lo, cur_hi = parts[0].hi;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i].lo <= cur_hi) {
      cur_hi = std::max(cur_hi, parts[i].hi);
    } else {
      measure += cur_hi - cur_lo;
      cur_lo = parts[i].lo;
      cur_hi = parts[i].hi;
    }
  }
  measure += cur_hi - cur_lo;
  require(sgn(measure) > 0, "|E| = 0");
  int d = std::max(0, p.degree());
  Rational base = 4 * I.length() / measure;
  Rational out = sup_on_E;
  for (int i = 0; i < d; ++i) out *= base;
  return out;
}

Rational remez_bound_discrete(const Polynomial& p, const Interval& I, const std::vector<Rational>& pts,
                              const Rational& M) {
  require(I.lo <= I.hi, "interval needs lo <= hi");
  require(sgn(M) >= 0, "M must be nonnegative");
  std::vector<Rational> sorted = pts;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    require(sorted[i].get_den() == 1, "Remez points must be integers");
    require(I.lo <= sorted[i] && sorted[i] <= I.hi, "Remez points must lie inside I");
    require(i == 0 || sorted[i] != sorted[i - 1], "Remez points must be distinct");
    require(abs_q(p.eval(sorted[i])) <= M, "|p| exceeds M at x = " + sorted[i].get_str());
  }
  int d = std::max(0, p.degree());
  long l = static_cast<long>(sorted.size()) - d;
  require(l >= 1, "fewer than d+1 points (d = " + std::to_string(d) + ")");
  return discrete_remez_factor(d, I.length(), l) * M;
}

}  // namespace dhl
