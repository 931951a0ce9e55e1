#include "dhl/goodrect.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dhl/error.hpp"

namespace dhl {

namespace {

constexpr long kBadDenominator = 100000;  // bad-cell density threshold 1/10^5
constexpr std::uint16_t kExponentCap = 65535;

template <class F>
void for_cells(const SlopedRect& R, F&& f) {
  for (long k = R.b1; k <= R.b2; ++k)
    for (long s = R.line_first(k); s <= R.a2; s += 2) f(SlopedCell{s, k});
}

bool above_one(const Scalar& v) { return compare(abs(v), Scalar::one(v.kind())) > 0; }

long count_bad(const GridFunction& U, const SlopedRect& R) {
  long bad = 0;
  for_cells(R, [&](SlopedCell p) {
    if (above_one(U.at(p))) ++bad;
  });
  return bad;
}

double log_max(const GridFunction& U, const SlopedRect& R) {
  double best = -INFINITY;
  for_cells(R, [&](SlopedCell p) { best = std::max(best, log_abs(U.at(p))); });
  return best;
}

void check_sloped(const GridFunction& U) {
  require(U.coords() == Coords::Sloped, "goodness needs a sloped grid");
  require(U.kind().real(), "goodness needs real values");
  for (char m : U.mask()) require(m != 0, "sloped grid has unset cells");
}

class Powers {
 public:
  Powers(const Rational& A, const ScalarKind& kind) : a_(Scalar::from_rational(A, kind)) { p_.push_back(Scalar::one(kind)); }
  const Scalar& operator()(long t) {
    while (static_cast<long>(p_.size()) <= t) p_.push_back(p_.back() * a_);
    return p_[static_cast<std::size_t>(t)];
  }

 private:
  Scalar a_;
  std::vector<Scalar> p_;
};

}  // namespace

void GoodnessConfig::validate() const {
  require(A > 1, "A must exceed 1");
  require(bad_fraction >= 0, "bad fraction threshold must be nonnegative");
}

bool is_good(const GridFunction& U, const SlopedRect& R, const GoodnessConfig& cfg) {
  cfg.validate();
  check_sloped(U);
  require(R.nonempty() && U.rect().contains(R), "rectangle lies outside the window");
  const long ad = R.a_doubled(), bd = R.b_doubled();
  if (ad > 10 * bd || bd > 10 * ad) return false;
  Rational lim = 1;
  mpz_pow_ui(lim.get_num_mpz_t(), cfg.A.get_num_mpz_t(), static_cast<unsigned long>(ad + bd));
  mpz_pow_ui(lim.get_den_mpz_t(), cfg.A.get_den_mpz_t(), static_cast<unsigned long>(ad + bd));
  const Scalar thr = Scalar::from_rational(lim, U.kind());
  bool ok = true;
  for_cells(R, [&](SlopedCell p) {
    if (ok && compare(U.at(p) * U.at(p), thr) > 0) ok = false;
  });
  return ok;
}

SlopedRect dilate(const SlopedRect& R, long n) {
  require(R.is_square(), "dilate needs a square");
  require(n >= 1 && (n & 1L), "dilation factor must be an odd positive integer");
  const long side = R.a2 - R.a1 + 1;  // doubled side length
  const long shift = (n - 1) / 2 * side;
  return {R.a1 - shift, R.a1 - shift + n * side - 1, R.b1 - shift, R.b1 - shift + n * side - 1};
}

bool share_cell(const SlopedRect& x, const SlopedRect& y) {
  long s1 = std::max(x.a1, y.a1), s2 = std::min(x.a2, y.a2);
  long k1 = std::max(x.b1, y.b1), k2 = std::min(x.b2, y.b2);
  if (s1 > s2 || k1 > k2) return false;
  if (s1 == s2 && k1 == k2) return ((s1 + k1) & 1L) == 0;
  return true;
}

bool is_proper_square(const SlopedRect& R) { return R.is_square() && R.nonempty() && share_cell(R, R); }

ExponentMap exponent_map(const GridFunction& U, const Rational& A) {
  check_sloped(U);
  require(A > 1, "A must exceed 1");
  ExponentMap out;
  out.window = U.rect();
  const SlopedRect& W = out.window;
  out.e.assign(static_cast<std::size_t>((W.a2 - W.a1 + 1) * (W.b2 - W.b1 + 1)), 0);
  Powers pw(A, U.kind());
  const double logA = std::log(A.get_d());
  for_cells(W, [&](SlopedCell p) {
    const Scalar& v = U.at(p);
    Scalar a = abs(v);
    if (compare(a, pw(0)) <= 0) return;
    double est = std::floor(log_abs(v) / logA);
    long t = static_cast<long>(std::clamp(est, 1.0, static_cast<double>(kExponentCap)));
    if (t < kExponentCap) {
      while (t < kExponentCap && compare(a, pw(t)) > 0) ++t;
      while (t > 1 && compare(a, pw(t - 1)) <= 0) --t;
    }
    out.e[static_cast<std::size_t>((p.k2 - W.b1) * (W.a2 - W.a1 + 1) + (p.s2 - W.a1))] = static_cast<std::uint16_t>(t);
  });
  return out;
}

ExpansionResult expand_good(const GridFunction& U, const SlopedRect& R, const GoodnessConfig& cfg) {
  require(R.a_doubled() >= R.b_doubled(), "expansion needs a(R) >= b(R)");
  require(is_good(U, R, cfg), "rectangle is not good");
  const long Bo = R.b2 - R.b1;
  SlopedRect R3{R.a1, R.a2, R.b1, R.b1 + 3 * Bo};
  require(U.rect().contains(R3), "tripled-height rectangle lies outside the window");
  ExpansionResult out;
  out.rect_cells = R.cell_count();
  out.bad_cells = count_bad(U, R3);
  out.hypothesis_ok = out.bad_cells * kBadDenominator < out.rect_cells;
  if (!out.hypothesis_ok) return out;

  out.log_M.push_back(log_max(U, R));
  for (int band = 1; band <= 40; ++band) {
    std::optional<long> chosen;
    for (long t = 0; t <= 3 * Bo && !chosen; ++t) {
      if (40 * t <= Bo * (39 + 2 * band) || 40 * t >= Bo * (40 + 2 * band)) continue;
      const long k = R.b1 + t;
      long small = 0, total = 0;
      for (long s = R.line_first(k); s <= R.a2; s += 2, ++total)
        if (!above_one(U.at(SlopedCell{s, k}))) ++small;
      if (total > 0 && 2 * small >= total) chosen = k;
    }
    if (!chosen) {
      out.missing_bands.push_back(band);
      continue;
    }
    out.band_lines.push_back(*chosen);
    out.log_M.push_back(log_max(U, SlopedRect{R.a1, R.a2, R.b1, *chosen}));
  }
  out.all_good = true;
  for (long t = (3 * Bo + 1) / 2; t <= 2 * Bo; ++t) {
    SlopedRect Rp{R.a1, R.a2, R.b1, R.b1 + t};
    ExpansionRow row{Rp.b2, is_good(U, Rp, cfg)};
    out.all_good = out.all_good && row.good;
    out.rows.push_back(row);
  }
  return out;
}

SquareFamily maximal_good_squares(const GridFunction& U, const SlopedRect& ambient, const GoodnessConfig& cfg,
                                  const SlopedRect& seed) {
  cfg.validate();
  check_sloped(U);
  require(ambient.nonempty() && U.rect().contains(ambient), "ambient rectangle lies outside the window");
  SquareFamily fam;
  fam.ambient = ambient;
  const ExponentMap em = exponent_map(U, cfg.A);
  const long W = ambient.a2 - ambient.a1 + 1, H = ambient.b2 - ambient.b1 + 1;
  const long Lmax = std::min(W, H) - 1;
  auto box = [&](long L, long i, long j) {
    return SlopedRect{ambient.a1 + i, ambient.a1 + i + L, ambient.b1 + j, ambient.b1 + j + L};
  };

  // good[L][j * (W - L) + i]: square of doubled size L at offset (i, j)
  std::vector<std::vector<char>> good(static_cast<std::size_t>(Lmax + 1));
  std::vector<std::uint16_t> cur(static_cast<std::size_t>(W * H));
  good[0].assign(cur.size(), 0);
  for (long j = 0; j < H; ++j)
    for (long i = 0; i < W; ++i) {
      long s = ambient.a1 + i, k = ambient.b1 + j;
      bool valid = ((s + k) & 1L) == 0;
      auto e = valid ? em.at(s, k) : std::uint16_t{0};
      cur[static_cast<std::size_t>(j * W + i)] = e;
      good[0][static_cast<std::size_t>(j * W + i)] = valid && e <= 1;
    }
  for (long L = 1; L <= Lmax; ++L) {
    const long w = W - L, h = H - L, pw = w + 1;
    std::vector<std::uint16_t> next(static_cast<std::size_t>(w * h));
    auto& g = good[static_cast<std::size_t>(L)];
    g.assign(next.size(), 0);
    for (long j = 0; j < h; ++j)
      for (long i = 0; i < w; ++i) {
        auto c = [&](long di, long dj) { return cur[static_cast<std::size_t>((j + dj) * pw + i + di)]; };
        std::uint16_t v = std::max({c(0, 0), c(1, 0), c(0, 1), c(1, 1)});
        next[static_cast<std::size_t>(j * w + i)] = v;
        g[static_cast<std::size_t>(j * w + i)] = v <= L + 1;
      }
    cur = std::move(next);
  }

  // sup: a good square of size >= L contains the box
  std::vector<char> sup_prev;
  std::vector<std::vector<SlopedRect>> by_level(static_cast<std::size_t>(Lmax + 1));
  for (long L = Lmax; L >= 0; --L) {
    const long w = W - L, h = H - L, pw = w - 1, ph = h - 1;
    std::vector<char> sup(static_cast<std::size_t>(w * h), 0);
    const auto& g = good[static_cast<std::size_t>(L)];
    for (long j = 0; j < h; ++j)
      for (long i = 0; i < w; ++i) {
        bool strict = false;
        if (L < Lmax)
          for (long dj = -1; dj <= 0 && !strict; ++dj)
            for (long di = -1; di <= 0 && !strict; ++di) {
              long pi = i + di, pj = j + dj;
              if (pi >= 0 && pj >= 0 && pi < pw && pj < ph && sup_prev[static_cast<std::size_t>(pj * pw + pi)]) strict = true;
            }
        const bool gd = g[static_cast<std::size_t>(j * w + i)] != 0;
        sup[static_cast<std::size_t>(j * w + i)] = gd || strict;
        if (gd && !strict) {
          SlopedRect r = box(L, i, j);
          if (share_cell(r, seed)) fam.squares.push_back(r);
        }
      }
    sup_prev = std::move(sup);
  }
  return fam;
}

SquareFamily vitali_select(const SquareFamily& fam) {
  for (const auto& q : fam.squares) require(is_proper_square(q), "family member " + q.str() + " is not a square");
  std::vector<std::size_t> order(fam.squares.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const SlopedRect &p = fam.squares[x], &q = fam.squares[y];
    if (p.a2 - p.a1 != q.a2 - q.a1) return p.a2 - p.a1 > q.a2 - q.a1;
    if (p.a1 + p.a2 != q.a1 + q.a2) return p.a1 + p.a2 < q.a1 + q.a2;
    return p.b1 + p.b2 < q.b1 + q.b2;
  });
  SquareFamily out;
  out.ambient = fam.ambient;
  for (std::size_t i : order) {
    const SlopedRect& q = fam.squares[i];
    bool free = std::none_of(out.squares.begin(), out.squares.end(), [&](const SlopedRect& r) { return share_cell(q, r); });
    if (free) out.squares.push_back(q);
  }
  return out;
}

SquareFamily random_square_family(SplitMix64& rng, const SlopedRect& ambient, int count, long max_side) {
  require(ambient.nonempty() && count >= 0 && max_side >= 1, "bad random family parameters");
  SquareFamily fam;
  fam.ambient = ambient;
  const long limit = std::min({max_side, ambient.a2 - ambient.a1 + 1, ambient.b2 - ambient.b1 + 1});
  while (static_cast<int>(fam.squares.size()) < count) {
    long side = rng.range(1, limit);
    long a1 = rng.range(ambient.a1, ambient.a2 - side + 1), b1 = rng.range(ambient.b1, ambient.b2 - side + 1);
    SlopedRect q{a1, a1 + side - 1, b1, b1 + side - 1};
    if (is_proper_square(q)) fam.squares.push_back(q);
  }
  return fam;
}

VitaliCheck verify_vitali(const SquareFamily& input, const SquareFamily& selected) {
  VitaliCheck out;
  for (std::size_t i = 0; i < selected.squares.size(); ++i)
    for (std::size_t j = i + 1; j < selected.squares.size(); ++j)
      if (share_cell(selected.squares[i], selected.squares[j])) out.disjoint = false;
  std::vector<SlopedRect> tripled;
  for (const auto& q : selected.squares) tripled.push_back(dilate(q, 3));
  for (const auto& q : input.squares)
    for_cells(q, [&](SlopedCell p) {
      bool hit = std::any_of(tripled.begin(), tripled.end(), [&](const SlopedRect& t) { return t.contains(p); });
      if (!hit) {
        out.covers = false;
        if (!out.witness) out.witness = p;
      }
    });
  return out;
}

GoodSquareResult find_good_square(const GridFunction& U, long K, const GoodnessConfig& cfg) {
  cfg.validate();
  check_sloped(U);
  require(K >= 1, "K must be positive");
  const SlopedRect QK = SlopedRect::centered(K);
  require(U.rect().contains(QK), "Q_K lies outside the window");
  GoodSquareResult out;
  out.K = K;
  out.cells_QK = QK.cell_count();
  out.bad_QK = count_bad(U, QK);
  out.hypothesis_ok = Rational(out.bad_QK) <= cfg.bad_fraction * out.cells_QK;
  const SlopedRect ambient = SlopedRect::centered(K / 10), seed = SlopedRect::centered(K / 100);
  SquareFamily fam = maximal_good_squares(U, ambient, cfg, seed);
  out.family_size = static_cast<long>(fam.squares.size());

  for (const auto& R : fam.squares) {
    if (50 * R.a_doubled() < 2 * K) continue;  // a(R) >= K/50
    out.R0 = R;
    const SlopedRect nine = dilate(R, 9);
    SlopedRect clip{std::max(nine.a1, QK.a1), std::min(nine.a2, QK.a2), std::max(nine.b1, QK.b1),
                    std::min(nine.b2, QK.b2)};
    out.bad_in_9R0 = clip.nonempty() ? count_bad(U, clip) : 0;
    out.dichotomy_ok = out.bad_in_9R0 * kBadDenominator < R.cell_count();
    const SlopedRect three = dilate(R, 3);
    out.three_good = U.rect().contains(three) && is_good(U, three, cfg);
    if (out.dichotomy_ok && out.three_good && three.contains(seed)) {
      out.found = true;
      out.square = three;
    }
    break;
  }
  if (!out.found) {
    SquareFamily nines;
    nines.ambient = QK;
    for (const auto& R : fam.squares) nines.squares.push_back(dilate(R, 9));
    SquareFamily sel = vitali_select(nines);
    out.selected = static_cast<long>(sel.squares.size());
    for (const auto& q : sel.squares) {
      const long side = (q.a2 - q.a1 + 1) / 9, off = 4 * side;
      out.selected_cells += SlopedRect{q.a1 + off, q.a1 + off + side - 1, q.b1 + off, q.b1 + off + side - 1}.cell_count();
    }
  }
  return out;
}

}  // namespace dhl
