#include "dhl/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "dhl/error.hpp"

namespace dhl {

namespace {

long floordiv2(long v) { return (v >= 0) ? v / 2 : -((-v + 1) / 2); }

double abs_double(const Scalar& v) { return std::fabs(to_double(v)); }

}  // namespace

std::string half_str(long doubled) {
  if ((doubled & 1L) == 0) return std::to_string(doubled / 2);
  return std::to_string(doubled) + "/2";
}

long parse_half(const std::string& text) {
  Rational q = parse_rational(text);
  Rational twice = q * 2;
  require(twice.get_den() == 1, "not a half-integer: '" + text + "'");
  require(twice.get_num().fits_slong_p(), "half-integer out of range: '" + text + "'");
  return twice.get_num().get_si();
}

bool Square::contains(Cell c) const {
  return std::labs(c.n - center.n) <= radius && std::labs(c.m - center.m) <= radius;
}

bool SlopedRect::nonempty() const { return a1 <= a2 && b1 <= b2 && cell_count() > 0; }

bool SlopedRect::contains(SlopedCell p) const {
  return p.valid() && p.s2 >= a1 && p.s2 <= a2 && p.k2 >= b1 && p.k2 <= b2;
}

bool SlopedRect::contains(const SlopedRect& r) const {
  return a1 <= r.a1 && r.a2 <= a2 && b1 <= r.b1 && r.b2 <= b2;
}

long SlopedRect::line_count(long k2) const {
  if (k2 < b1 || k2 > b2 || a1 > a2) return 0;
  long first = line_first(k2);
  if (first > a2) return 0;
  return (a2 - first) / 2 + 1;
}

long SlopedRect::cell_count() const {
  if (a1 > a2 || b1 > b2) return 0;
  long total = 0;
  for (long k = b1; k <= b2; ++k) total += line_count(k);
  return total;
}

std::string SlopedRect::str() const {
  return "[" + half_str(a1) + "," + half_str(a2) + "]x[" + half_str(b1) + "," + half_str(b2) + "]";
}

// -------------------------------------------------------------- GridFunction

GridFunction GridFunction::standard(const Square& window, const ScalarKind& kind) {
  require(window.radius >= 0, "square radius must be nonnegative");
  GridFunction g;
  g.coords_ = Coords::Standard;
  g.square_ = window;
  g.kind_ = kind;
  auto count = static_cast<std::size_t>(window.cell_count());
  g.values_.assign(count, Scalar::zero(kind));
  g.mask_.assign(count, 0);
  return g;
}

GridFunction GridFunction::sloped(const SlopedRect& window, const ScalarKind& kind) {
  require(window.a1 <= window.a2 && window.b1 <= window.b2, "sloped window must have a1 <= a2 and b1 <= b2");
  GridFunction g;
  g.coords_ = Coords::Sloped;
  g.rect_ = window;
  g.kind_ = kind;
  long rows = window.b2 - window.b1 + 1;
  g.row_start_.resize(static_cast<std::size_t>(rows) + 1);
  long acc = 0;
  for (long r = 0; r < rows; ++r) {
    g.row_start_[static_cast<std::size_t>(r)] = acc;
    acc += window.line_count(window.b1 + r);
  }
  g.row_start_.back() = acc;
  g.values_.assign(static_cast<std::size_t>(acc), Scalar::zero(kind));
  g.mask_.assign(static_cast<std::size_t>(acc), 0);
  return g;
}

GridFunction GridFunction::from_function(const Square& window, const ScalarKind& kind,
                                         const std::function<Scalar(Cell)>& f) {
  GridFunction g = standard(window, kind);
  for (Cell c : g.cells()) g.set(c, f(c));
  return g;
}

GridFunction GridFunction::from_function(const SlopedRect& window, const ScalarKind& kind,
                                         const std::function<Scalar(SlopedCell)>& f) {
  GridFunction g = sloped(window, kind);
  for (SlopedCell p : g.sloped_cells()) g.set(p, f(p));
  return g;
}

const Square& GridFunction::square() const {
  require(coords_ == Coords::Standard, "grid function is not in standard coordinates");
  return square_;
}

const SlopedRect& GridFunction::rect() const {
  require(coords_ == Coords::Sloped, "grid function is not in sloped coordinates");
  return rect_;
}

bool GridFunction::in_window(Cell c) const { return coords_ == Coords::Standard && square_.contains(c); }

bool GridFunction::in_window(SlopedCell p) const { return coords_ == Coords::Sloped && rect_.contains(p); }

std::size_t GridFunction::index(Cell c) const {
  require(in_window(c), "cell (" + std::to_string(c.n) + "," + std::to_string(c.m) + ") outside window");
  long side = square_.side();
  long row = c.m - square_.center.m + square_.radius;
  long col = c.n - square_.center.n + square_.radius;
  return static_cast<std::size_t>(row * side + col);
}

std::size_t GridFunction::index(SlopedCell p) const {
  require(in_window(p), "sloped cell (" + half_str(p.s2) + "," + half_str(p.k2) + ") outside window");
  long row = p.k2 - rect_.b1;
  long first = rect_.line_first(p.k2);
  return static_cast<std::size_t>(row_start_[static_cast<std::size_t>(row)] + (p.s2 - first) / 2);
}

const Scalar& GridFunction::at(Cell c) const {
  std::size_t i = index(c);
  require(mask_[i] != 0, "cell (" + std::to_string(c.n) + "," + std::to_string(c.m) + ") is unset");
  return values_[i];
}

const Scalar& GridFunction::at(SlopedCell p) const {
  std::size_t i = index(p);
  require(mask_[i] != 0, "sloped cell (" + half_str(p.s2) + "," + half_str(p.k2) + ") is unset");
  return values_[i];
}

void GridFunction::check_kind(const Scalar& v) const {
  if (!(v.kind() == kind_)) {
    // rationals embed into quadratic windows
    if (kind_.tag() == ScalarKind::Tag::Quadratic && v.kind().tag() == ScalarKind::Tag::Rational) return;
    throw precondition_error("value of kind " + v.kind().name() + " stored in a " + kind_.name() + " grid");
  }
}

void GridFunction::set(Cell c, Scalar v) { set_index(index(c), std::move(v)); }

void GridFunction::set(SlopedCell p, Scalar v) { set_index(index(p), std::move(v)); }

void GridFunction::set_index(std::size_t i, Scalar v) {
  check_kind(v);
  if (kind_.tag() == ScalarKind::Tag::Quadratic && v.kind().tag() == ScalarKind::Tag::Rational)
    v = Scalar(v.as_rational(), Rational(0), kind_.radicand());
  values_[i] = std::move(v);
  mask_[i] = 1;
}

std::vector<Cell> GridFunction::cells() const {
  require(coords_ == Coords::Standard, "cells() needs standard coordinates");
  std::vector<Cell> out;
  out.reserve(values_.size());
  const auto& c = square_.center;
  long r = square_.radius;
  for (long m = c.m - r; m <= c.m + r; ++m)
    for (long n = c.n - r; n <= c.n + r; ++n) out.push_back({n, m});
  return out;
}

std::vector<SlopedCell> GridFunction::sloped_cells() const {
  require(coords_ == Coords::Sloped, "sloped_cells() needs sloped coordinates");
  std::vector<SlopedCell> out;
  out.reserve(values_.size());
  for (long k = rect_.b1; k <= rect_.b2; ++k)
    for (long s = rect_.line_first(k); s <= rect_.a2; s += 2) out.push_back({s, k});
  return out;
}

bool operator==(const GridFunction& a, const GridFunction& b) {
  if (a.coords_ != b.coords_ || !(a.kind_ == b.kind_) || a.mask_ != b.mask_) return false;
  if (a.coords_ == Coords::Standard) {
    if (a.square_.center != b.square_.center || a.square_.radius != b.square_.radius) return false;
  } else if (!(a.rect_ == b.rect_)) {
    return false;
  }
  for (std::size_t i = 0; i < a.values_.size(); ++i)
    if (a.mask_[i] && !(a.values_[i] == b.values_[i])) return false;
  return true;
}

// ----------------------------------------------------------------- residuals

Scalar laplacian_residual(const GridFunction& u, Cell x) {
  require(u.coords() == Coords::Standard, "laplacian_residual needs standard coordinates");
  const Cell nb[4] = {{x.n + 1, x.m}, {x.n - 1, x.m}, {x.n, x.m + 1}, {x.n, x.m - 1}};
  for (Cell c : nb) require(u.in_window(c), "stencil of (" + std::to_string(x.n) + "," + std::to_string(x.m) + ") leaves the window");
  Scalar r = u.at(nb[0]) + u.at(nb[1]) + u.at(nb[2]) + u.at(nb[3]);
  r -= Scalar::from_integer(4, u.kind()) * u.at(x);
  return r;
}

Scalar sloped_residual(const GridFunction& U, SlopedCell p) {
  require(U.coords() == Coords::Sloped, "sloped_residual needs sloped coordinates");
  require(p.valid(), "stencil corner must satisfy s + k in Z");
  const SlopedCell center{p.s2 + 1, p.k2 + 1};
  const SlopedCell pts[4] = {{p.s2, p.k2}, {p.s2 + 2, p.k2}, {p.s2, p.k2 + 2}, {p.s2 + 2, p.k2 + 2}};
  require(U.in_window(center), "sloped stencil leaves the window");
  for (SlopedCell q : pts) require(U.in_window(q), "sloped stencil leaves the window");
  Scalar r = Scalar::from_integer(4, U.kind()) * U.at(center);
  for (SlopedCell q : pts) r -= U.at(q);
  return r;
}

HarmonicReport is_harmonic(const GridFunction& u, const ToleranceProfile& tol) {
  HarmonicReport rep;
  rep.worst_exact = Scalar::zero(u.kind());
  const bool exact = u.kind().exact();
  double scale = 0.0;
  if (!exact) {
    for (std::size_t i = 0; i < u.size(); ++i)
      if (u.mask()[i]) scale = std::max(scale, abs_double(u.values()[i]));
  }
  auto consider = [&](const Scalar& r, auto record) {
    ++rep.checked;
    double a = abs_double(r);
    bool ok = exact ? r.is_zero() : tol.accepts(a, scale);
    if (!ok) rep.harmonic = false;
    if (rep.checked == 1 || a > rep.worst || (!ok && rep.worst_exact.is_zero())) {
      rep.worst = a;
      rep.worst_exact = r;
      record();
    }
  };
  if (u.coords() == Coords::Standard) {
    const auto& sq = u.square();
    for (Cell x : u.cells()) {
      if (std::labs(x.n - sq.center.n) >= sq.radius || std::labs(x.m - sq.center.m) >= sq.radius) continue;
      const Cell nb[4] = {{x.n + 1, x.m}, {x.n - 1, x.m}, {x.n, x.m + 1}, {x.n, x.m - 1}};
      if (!u.is_set(x) || !u.is_set(nb[0]) || !u.is_set(nb[1]) || !u.is_set(nb[2]) || !u.is_set(nb[3])) continue;
      consider(laplacian_residual(u, x), [&] { rep.where = x; });
    }
  } else {
    const auto& R = u.rect();
    for (SlopedCell p : u.sloped_cells()) {
      if (p.s2 + 2 > R.a2 || p.k2 + 2 > R.b2) continue;
      const SlopedCell pts[5] = {
          {p.s2 + 1, p.k2 + 1}, {p.s2, p.k2}, {p.s2 + 2, p.k2}, {p.s2, p.k2 + 2}, {p.s2 + 2, p.k2 + 2}};
      bool all = true;
      for (SlopedCell q : pts) all = all && u.is_set(q);
      if (!all) continue;
      consider(sloped_residual(u, p), [&] { rep.where_sloped = p; });
    }
  }
  return rep;
}

// ------------------------------------------------------------ coordinate maps

GridFunction to_sloped(const GridFunction& u, std::optional<SlopedRect> target) {
  const Square& sq = u.square();
  SlopedRect R;
  if (target) {
    R = *target;
  } else {
    long s0 = sq.center.n + sq.center.m, k0 = sq.center.n - sq.center.m;
    R = {s0 - sq.radius, s0 + sq.radius, k0 - sq.radius, k0 + sq.radius};
  }
  GridFunction U = GridFunction::sloped(R, u.kind());
  for (SlopedCell p : U.sloped_cells()) {
    Cell c = to_standard(p);
    require(sq.contains(c), "target sloped window " + R.str() + " does not fit inside the standard window");
    if (u.is_set(c)) U.set(p, u.at(c));
  }
  return U;
}

GridFunction from_sloped(const GridFunction& U, std::optional<Square> target) {
  const SlopedRect& R = U.rect();
  Square sq;
  if (target) {
    sq = *target;
  } else {
    long s0 = floordiv2(R.a1 + R.a2), k0 = floordiv2(R.b1 + R.b2);
    if ((s0 + k0) & 1L) k0 = (k0 - R.b1 >= R.b2 - k0) ? k0 - 1 : k0 + 1;
    long room = std::min({s0 - R.a1, R.a2 - s0, k0 - R.b1, R.b2 - k0});
    require(room >= 0, "sloped window too small for a standard square");
    sq = {{(s0 + k0) / 2, (s0 - k0) / 2}, room / 2};
  }
  GridFunction u = GridFunction::standard(sq, U.kind());
  for (Cell c : u.cells()) {
    SlopedCell p = to_sloped(c);
    require(R.contains(p), "target square does not fit inside the sloped window");
    if (U.is_set(p)) u.set(c, U.at(p));
  }
  return u;
}

// ------------------------------------------------------------- measurements

Rational portion_below(const std::function<Scalar(Cell)>& u, const Scalar& threshold, const Square& Q) {
  long count = 0;
  for (long m = Q.center.m - Q.radius; m <= Q.center.m + Q.radius; ++m)
    for (long n = Q.center.n - Q.radius; n <= Q.center.n + Q.radius; ++n)
      if (abs_le(u({n, m}), threshold)) ++count;
  Rational q(count, Q.cell_count());
  q.canonicalize();
  return q;
}

Rational portion_below(const GridFunction& u, const Scalar& threshold, const Square& Q) {
  const Square& W = u.square();
  require(W.contains({Q.center.n - Q.radius, Q.center.m - Q.radius}) &&
              W.contains({Q.center.n + Q.radius, Q.center.m + Q.radius}),
          "square Q must lie inside the window");
  return portion_below([&](Cell c) -> Scalar { return u.at(c); }, threshold, Q);
}

GrowthProfile growth_profile(const GridFunction& u, const std::vector<long>& radii) {
  const Square& W = u.square();
  long rmax = 0;
  for (long r : radii) {
    require(r >= 0, "radii must be nonnegative");
    require(r <= W.radius, "radius " + std::to_string(r) + " exceeds the window radius " + std::to_string(W.radius));
    rmax = std::max(rmax, r);
  }
  ScalarKind absk = u.kind().tag() == ScalarKind::Tag::Complex ? ScalarKind::floating(u.kind().precision())
                                                               : u.kind();
  std::vector<Scalar> prefix(static_cast<std::size_t>(rmax) + 1, Scalar::zero(absk));
  for (Cell c : u.cells()) {
    long d = std::max(std::labs(c.n - W.center.n), std::labs(c.m - W.center.m));
    if (d > rmax || !u.is_set(c)) continue;
    Scalar a = abs(u.at(c));
    auto& slot = prefix[static_cast<std::size_t>(d)];
    if (compare(a, slot) > 0) slot = std::move(a);
  }
  for (std::size_t r = 1; r < prefix.size(); ++r)
    if (compare(prefix[r - 1], prefix[r]) > 0) prefix[r] = prefix[r - 1];
  GrowthProfile p;
  for (long r : radii) {
    p.radii.push_back(r);
    p.maxima.push_back(prefix[static_cast<std::size_t>(r)]);
    p.log_maxima.push_back(log_abs(p.maxima.back()));
  }
  return p;
}

double fitted_slope(const GrowthProfile& p, long kmin, long kmax) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  long count = 0;
  for (std::size_t i = 0; i < p.radii.size(); ++i) {
    long K = p.radii[i];
    double y = p.log_maxima[i];
    if (K < kmin || K > kmax || !std::isfinite(y)) continue;
    double x = static_cast<double>(K);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  require(count >= 2, "slope fit needs at least two finite points");
  double n = static_cast<double>(count);
  double den = n * sxx - sx * sx;
  require(den != 0.0, "slope fit needs two distinct radii");
  return (n * sxy - sx * sy) / den;
}

std::vector<DoublingRow> doubling_report(const GrowthProfile& p, double c1) {
  std::map<long, std::size_t> at;
  for (std::size_t i = 0; i < p.radii.size(); ++i) at[p.radii[i]] = i;
  std::vector<DoublingRow> rows;
  for (const auto& [K, i] : at) {
    if (K < 1) continue;
    auto j = at.find(2 * K);
    if (j == at.end()) continue;
    DoublingRow row;
    row.K = K;
    row.log_m = p.log_maxima[i];
    row.log_m2 = p.log_maxima[j->second];
    const Scalar& mk = p.maxima[i];
    bool above_one = compare(mk, Scalar::one(mk.kind())) > 0;
    if (above_one) {
      if (mk.kind().exact()) {
        row.power = compare(p.maxima[j->second], pow(mk, 32)) >= 0;
      } else {
        row.power = row.log_m2 >= 32.0 * row.log_m;
      }
      row.exponential = row.log_m2 >= row.log_m + c1 * static_cast<double>(K);
    }
    row.label = row.power && row.exponential ? "both"
                : row.power                  ? "power"
                : row.exponential            ? "exponential"
                                             : "neither";
    rows.push_back(row);
  }
  return rows;
}

}  // namespace dhl
