#pragma once

// Lattice geometry in standard (n, m) and sloped (s, k) coordinates.
// Sloped coordinates are stored doubled: S = 2s, K = 2k, with S + K even.
// The identification is U(s, k) = u(s + k, s - k), i.e. n = (S + K) / 2,
// m = (S - K) / 2.

#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dhl/numeric.hpp"

namespace dhl {

struct Cell {
  long n = 0;
  long m = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct SlopedCell {
  long s2 = 0;
  long k2 = 0;
  bool valid() const { return ((s2 + k2) & 1L) == 0; }
  friend auto operator<=>(const SlopedCell&, const SlopedCell&) = default;
};

inline Cell to_standard(SlopedCell p) { return {(p.s2 + p.k2) / 2, (p.s2 - p.k2) / 2}; }
inline SlopedCell to_sloped(Cell c) { return {c.n + c.m, c.n - c.m}; }

/// Renders a doubled coordinate as "k" or "p/2".
std::string half_str(long doubled);
/// Inverse of half_str; accepts integers, "p/2" and decimals ending in .5.
long parse_half(const std::string& text);

struct Square {
  Cell center;
  long radius = 0;

  bool contains(Cell c) const;
  long side() const { return 2 * radius + 1; }
  long cell_count() const { return side() * side(); }
};

/// R = { a1 <= s <= a2, b1 <= k <= b2 } in Z^2_sloped; all bounds doubled.
struct SlopedRect {
  long a1 = 0, a2 = 0, b1 = 0, b2 = 0;

  static SlopedRect centered(long radius) { return {-2 * radius, 2 * radius, -2 * radius, 2 * radius}; }

  bool nonempty() const;
  bool contains(SlopedCell p) const;
  bool contains(const SlopedRect& r) const;
  /// Doubled side lengths: 2a(R) = a2 - a1 + 1 in doubled units.
  long a_doubled() const { return a2 - a1 + 1; }
  long b_doubled() const { return b2 - b1 + 1; }
  Rational a() const { return Rational(a_doubled(), 2); }
  Rational b() const { return Rational(b_doubled(), 2); }
  /// Number of valid cells in the rectangle.
  long cell_count() const;
  /// Number of valid cells on the line K = k2 (zero if outside [b1, b2]).
  long line_count(long k2) const;
  /// First valid S on line K = k2.
  long line_first(long k2) const { return ((a1 + k2) & 1L) ? a1 + 1 : a1; }
  bool is_square() const { return a2 - a1 == b2 - b1; }
  std::string str() const;
  friend bool operator==(const SlopedRect&, const SlopedRect&) = default;
};

enum class Coords { Standard, Sloped };

/// Dense storage of scalar values over a Square (standard) or a SlopedRect
/// (sloped). Traversal order: m (or k) outer increasing, n (or s) inner
/// increasing; sloped traversal visits valid cells only. Cells can be left
/// unset (for example the corners of a Dirichlet solve).
class GridFunction {
 public:
  GridFunction() = default;
  static GridFunction standard(const Square& window, const ScalarKind& kind);
  static GridFunction sloped(const SlopedRect& window, const ScalarKind& kind);
  static GridFunction from_function(const Square& window, const ScalarKind& kind,
                                    const std::function<Scalar(Cell)>& f);
  static GridFunction from_function(const SlopedRect& window, const ScalarKind& kind,
                                    const std::function<Scalar(SlopedCell)>& f);

  Coords coords() const { return coords_; }
  const Square& square() const;
  const SlopedRect& rect() const;
  const ScalarKind& kind() const { return kind_; }
  std::size_t size() const { return values_.size(); }

  bool in_window(Cell c) const;
  bool in_window(SlopedCell p) const;
  std::size_t index(Cell c) const;
  std::size_t index(SlopedCell p) const;

  const Scalar& at(Cell c) const;
  const Scalar& at(SlopedCell p) const;
  void set(Cell c, Scalar v);
  void set(SlopedCell p, Scalar v);
  bool is_set(Cell c) const { return mask_[index(c)] != 0; }
  bool is_set(SlopedCell p) const { return mask_[index(p)] != 0; }

  /// Cells in traversal order.
  std::vector<Cell> cells() const;
  std::vector<SlopedCell> sloped_cells() const;

  const std::vector<Scalar>& values() const { return values_; }
  const std::vector<char>& mask() const { return mask_; }
  void set_index(std::size_t i, Scalar v);
  void unset_index(std::size_t i) { mask_[i] = 0; }

  friend bool operator==(const GridFunction& a, const GridFunction& b);

 private:
  void check_kind(const Scalar& v) const;

  Coords coords_ = Coords::Standard;
  Square square_;
  SlopedRect rect_;
  ScalarKind kind_;
  std::vector<long> row_start_;
  std::vector<Scalar> values_;
  std::vector<char> mask_;
};

/// u(n+1,m) + u(n-1,m) + u(n,m+1) + u(n,m-1) - 4u(n,m).
Scalar laplacian_residual(const GridFunction& u, Cell x);
/// 4U(s+1/2,k+1/2) - U(s,k) - U(s+1,k) - U(s,k+1) - U(s+1,k+1), p = (s,k).
Scalar sloped_residual(const GridFunction& U, SlopedCell p);

struct HarmonicReport {
  bool harmonic = true;
  std::size_t checked = 0;
  double worst = 0.0;       // |residual| as double
  Scalar worst_exact;       // the residual itself
  std::optional<Cell> where;
  std::optional<SlopedCell> where_sloped;
};

/// Checks every stencil whose cells are all set. Exact kinds need residual 0.
HarmonicReport is_harmonic(const GridFunction& u, const ToleranceProfile& tol = {});

/// Standard -> sloped. Default target: the largest centered sloped square
/// inside the transformed window.
GridFunction to_sloped(const GridFunction& u, std::optional<SlopedRect> target = std::nullopt);
/// Sloped -> standard. Default target: the largest centered square inside.
GridFunction from_sloped(const GridFunction& U, std::optional<Square> target = std::nullopt);

/// Exact fraction |{x in Q : |u(x)| <= t}| / |Q|.
Rational portion_below(const GridFunction& u, const Scalar& threshold, const Square& Q);
Rational portion_below(const std::function<Scalar(Cell)>& u, const Scalar& threshold, const Square& Q);

struct GrowthProfile {
  std::vector<long> radii;
  std::vector<Scalar> maxima;
  std::vector<double> log_maxima;  // natural log, -inf for zero
};

GrowthProfile growth_profile(const GridFunction& u, const std::vector<long>& radii);
/// Least-squares slope of log M(K) against K over kmin <= K <= kmax.
double fitted_slope(const GrowthProfile& p, long kmin, long kmax);

struct DoublingRow {
  long K = 0;
  double log_m = 0.0;
  double log_m2 = 0.0;
  bool power = false;        // M(2K) >= M(K)^32 (only when M(K) > 1)
  bool exponential = false;  // M(2K) >= M(K) e^{c1 K}
  std::string label;         // "power", "exponential", "both", "neither"
};

std::vector<DoublingRow> doubling_report(const GrowthProfile& p, double c1);

}  // namespace dhl
