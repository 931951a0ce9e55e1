#include "dhl/extension.hpp"

#include <algorithm>

#include "dhl/error.hpp"
#include "dhl/remez.hpp"

namespace dhl {

namespace {

bool in_s(const SlopedRect& R, SlopedCell p) { return std::min(p.s2 - R.a1, p.k2 - R.b1) <= 1; }

Scalar lift(const Scalar& v, const ScalarKind& kind) {
  if (kind.tag() == ScalarKind::Tag::Quadratic && v.kind().tag() == ScalarKind::Tag::Rational)
    return Scalar(v.as_rational(), Rational(0), kind.radicand());
  return v;
}

}  // namespace

std::vector<SlopedCell> LShapeData::domain(const SlopedRect& rect) {
  require(rect.a1 <= rect.a2 && rect.b1 <= rect.b2, "rectangle needs a1 <= a2 and b1 <= b2");
  std::vector<SlopedCell> out;
  for (long k = rect.b1; k <= rect.b2; ++k)
    for (long s = rect.line_first(k); s <= rect.a2; s += 2)
      if (in_s(rect, {s, k})) out.push_back({s, k});
  return out;
}

LShapeData LShapeData::from_function(const SlopedRect& rect, const ScalarKind& kind,
                                     const std::function<Scalar(SlopedCell)>& f) {
  LShapeData d;
  d.rect = rect;
  d.kind = kind;
  d.cells = domain(rect);
  for (SlopedCell p : d.cells) d.values.push_back(lift(f(p), kind));
  return d;
}

void LShapeData::validate() const {
  require(rect.nonempty(), "L-shape rectangle is empty");
  require(cells == domain(rect), "L-shape cells must be exactly S in traversal order");
  require(values.size() == cells.size(), "L-shape needs one value per cell of S");
}

GridFunction extend_lshape(const LShapeData& data) {
  data.validate();
  const SlopedRect& R = data.rect;
  GridFunction U = GridFunction::sloped(R, data.kind);
  for (std::size_t i = 0; i < data.cells.size(); ++i) U.set(data.cells[i], data.values[i]);
  const Scalar four = Scalar::from_integer(4, data.kind);
  for (long k = R.b1 + 2; k <= R.b2; ++k)
    for (long s = R.line_first(k); s <= R.a2; s += 2) {
      if (s - R.a1 <= 1) continue;
      Scalar v = four * U.at(SlopedCell{s - 1, k - 1});
      v -= U.at(SlopedCell{s, k - 2});
      v -= U.at(SlopedCell{s - 2, k - 2});
      v -= U.at(SlopedCell{s - 2, k});
      U.set(SlopedCell{s, k}, std::move(v));
    }
  return U;
}

LShapeBounds check_lshape_bounds(const GridFunction& U, const LShapeData& data) {
  const SlopedRect& R = data.rect;
  const ScalarKind& kind = U.kind();
  require(kind.real(), "bound check needs a real kind");
  Scalar M = Scalar::zero(kind);
  for (const auto& v : data.values) {
    Scalar a = abs(lift(v, kind));
    if (compare(a, M) > 0) M = a;
  }
  Scalar M2 = M * M;
  const long emax = (R.a2 - R.a1 + 1) + (R.b2 - R.b1 + 1);
  std::vector<Scalar> pow7;
  Scalar p = Scalar::one(kind);
  const Scalar seven = Scalar::from_integer(7, kind);
  for (long e = 0; e <= emax; ++e) {
    pow7.push_back(p * M2);
    p *= seven;
  }
  LShapeBounds out;
  for (SlopedCell c : U.sloped_cells()) {
    Scalar v2 = U.at(c) * U.at(c);
    long e = c.s2 + c.k2 - R.a1 - R.b1;
    if (compare(v2, pow7[static_cast<std::size_t>(e)]) > 0) {
      out.cellwise_ok = false;
      if (!out.witness) out.witness = c;
    }
    if (compare(v2, pow7[static_cast<std::size_t>(emax)]) > 0) {
      out.global_ok = false;
      if (!out.witness) out.witness = c;
    }
  }
  return out;
}

GridFunction halfplane_construct(const DiagonalSeed& seed) {
  const long N = seed.N;
  require(N >= 0, "half-plane window radius must be nonnegative");
  const ScalarKind& kind = seed.kind;
  const long xlo = -N, xtop = 3 * N + 2;
  const auto width = static_cast<std::size_t>(xtop - xlo + 1);
  const Scalar zero = Scalar::zero(kind), four = Scalar::from_integer(4, kind);
  // diag[d + 1] for d = -1 .. 2N, each indexed by x - xlo
  std::vector<std::vector<Scalar>> diag(static_cast<std::size_t>(2 * N + 2), std::vector<Scalar>(width, zero));
  auto idx = [&](long x) { return static_cast<std::size_t>(x - xlo); };
  for (long d = 1; d <= 2 * N; ++d) {
    auto& cur = diag[static_cast<std::size_t>(d + 1)];
    const auto& p1 = diag[static_cast<std::size_t>(d)];
    const auto& p2 = diag[static_cast<std::size_t>(d - 1)];
    const long hi = xtop - d;
    auto rhs = [&](long x) {
      Scalar r = four * p1[idx(x)];
      r -= p2[idx(x + 1)];
      r -= p2[idx(x)];
      return r;
    };
    Scalar t = static_cast<std::size_t>(d - 1) < seed.t.size() ? lift(seed.t[static_cast<std::size_t>(d - 1)], kind)
                                                                 : zero;
    require(t.kind() == kind, "seed value kind mismatch");
    cur[idx(0)] = t;
    for (long x = 1; x <= hi; ++x) cur[idx(x)] = rhs(x) - cur[idx(x - 1)];
    for (long x = 0; x >= xlo + 1; --x) cur[idx(x - 1)] = rhs(x) - cur[idx(x)];
  }
  return GridFunction::from_function(Square{{0, 0}, N}, kind, [&](Cell c) {
    long d = c.m - c.n;
    if (d <= 0) return zero;
    return diag[static_cast<std::size_t>(d + 1)][idx(c.n)];
  });
}

Scalar LinePolynomial::eval(long t) const {
  require(!coeffs.empty(), "empty line polynomial");
  const ScalarKind kind = coeffs.front().kind();
  Scalar x = Scalar::from_integer(t, kind);
  Scalar acc = Scalar::zero(kind);
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

LinePolynomial line_polynomial(const GridFunction& U, const SlopedRect& rect, long k2) {
  const ScalarKind& kind = U.kind();
  require(kind.exact(), "line_polynomial needs an exact kind");
  require(U.rect().contains(rect), "rectangle must lie inside the window");
  require(rect.b2 - rect.b1 >= 2, "rectangle has only the two bottom lines (b(R) <= 1)");
  require(k2 >= rect.b1 + 2 && k2 <= rect.b2, "line index must satisfy b1 + 1 <= k <= b2");
  for (long k = rect.b1; k <= rect.b1 + 1; ++k)
    for (long s = rect.line_first(k); s <= rect.a2; s += 2)
      require(U.at(SlopedCell{s, k}).is_zero(), "bottom two lines are not identically zero");

  LinePolynomial lp;
  lp.k2 = k2;
  lp.s2_first = rect.line_first(k2);
  lp.degree_bound = k2 - rect.b1 - 2;
  for (long s = lp.s2_first; s <= rect.a2; s += 2) {
    Scalar v = U.at(SlopedCell{s, k2});
    long parity = (s + k2) / 2;
    if (parity & 1L) v = -v;
    lp.values.push_back(v);
  }
  const std::size_t n = lp.values.size();
  std::vector<Scalar> row = lp.values;
  for (std::size_t j = 0; j < n; ++j) {
    lp.newton.push_back(row.front());
    if (static_cast<long>(j) > lp.degree_bound)
      for (const auto& r : row)
        require(r.is_zero(), "degree bound " + std::to_string(lp.degree_bound) + " violated on line k = " +
                                 half_str(k2) + " (input is not harmonic)");
    std::vector<Scalar> next;
    for (std::size_t i = 0; i + 1 < row.size(); ++i) next.push_back(row[i + 1] - row[i]);
    row = std::move(next);
  }
  for (std::size_t j = 0; j < lp.newton.size(); ++j)
    if (!lp.newton[j].is_zero()) lp.degree = static_cast<int>(j);
  // monomial form: sum_j newton[j] * t(t-1)...(t-j+1) / j!
  const std::size_t terms = static_cast<std::size_t>(std::max(lp.degree, 0)) + 1;
  lp.coeffs.assign(terms, Scalar::zero(kind));
  std::vector<Scalar> basis{Scalar::one(kind)};
  for (std::size_t j = 0; j < terms; ++j) {
    if (j > 0) {
      std::vector<Scalar> nb(basis.size() + 1, Scalar::zero(kind));
      Scalar shift = Scalar::from_integer(static_cast<long>(j - 1), kind);
      Scalar inv = Scalar::one(kind) / Scalar::from_integer(static_cast<long>(j), kind);
      for (std::size_t i = 0; i < basis.size(); ++i) {
        nb[i + 1] += basis[i] * inv;
        nb[i] -= basis[i] * shift * inv;
      }
      basis = std::move(nb);
    }
    if (j < lp.newton.size())
      for (std::size_t i = 0; i < basis.size(); ++i) lp.coeffs[i] += lp.newton[j] * basis[i];
  }
  return lp;
}

LineBound remez_line_bound(const GridFunction& U, const SlopedRect& rect, const Rational& M) {
  require(U.kind().tag() == ScalarKind::Tag::Rational, "remez_line_bound needs rational values");
  require(rect.a_doubled() >= 10 * rect.b_doubled(), "precondition a(R) >= 10 b(R) fails");
  require(sgn(M) >= 0, "M must be nonnegative");
  LinePolynomial lp = line_polynomial(U, rect, rect.b2);
  LineBound out;
  out.points = static_cast<long>(lp.values.size());
  std::vector<Rational> pts;
  out.actual_max = 0;
  for (std::size_t t = 0; t < lp.values.size(); ++t) {
    Rational v = abs(lp.values[t]).as_rational();
    if (v > out.actual_max) out.actual_max = v;
    if (v <= M) pts.push_back(Rational(static_cast<long>(t)));
  }
  out.small_points = static_cast<long>(pts.size());
  require(2 * out.small_points >= out.points, "|U| <= M holds on fewer than half of T_b2");
  std::vector<Rational> c;
  for (const auto& s : lp.coeffs) c.push_back(s.as_rational());
  Polynomial p(c);
  out.degree = std::max(0, p.degree());
  Interval I{Rational(0), Rational(out.points - 1)};
  out.bound = remez_bound_discrete(p, I, pts, M);
  out.factor = discrete_remez_factor(out.degree, I.length(), out.small_points - out.degree);
  return out;
}

}  // namespace dhl
