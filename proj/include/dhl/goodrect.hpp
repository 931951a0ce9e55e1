#pragma once

// Good rectangles on the sloped lattice: goodness, dilation, the expansion
// procedure, maximal good squares, greedy Vitali selection and the search
// for a good square around the origin.

#include <cstdint>
#include <optional>
#include <vector>

#include "dhl/lattice.hpp"
#include "dhl/rng.hpp"

namespace dhl {

struct GoodnessConfig {
  Rational A{7};
  Rational bad_fraction{1, 1000};  // threshold in find_good_square
  void validate() const;
};

struct SquareFamily {
  SlopedRect ambient;
  std::vector<SlopedRect> squares;
};

/// Aspect a/10 <= b <= 10a and max_R |U| <= A^{a+b}, decided exactly.
bool is_good(const GridFunction& U, const SlopedRect& R, const GoodnessConfig& cfg);

/// Square with the same center and n times the side; n odd >= 1.
SlopedRect dilate(const SlopedRect& R, long n);

/// True when the two rectangles share at least one valid cell.
bool share_cell(const SlopedRect& x, const SlopedRect& y);
/// A square holding at least one valid cell.
bool is_proper_square(const SlopedRect& R);

/// e(x) = least t >= 0 with |U(x)| <= A^t, clamped to 65535.
struct ExponentMap {
  SlopedRect window;
  std::vector<std::uint16_t> e;  // doubled box, row K outer; invalid cells hold 0
  std::uint16_t at(long s2, long k2) const {
    return e[static_cast<std::size_t>((k2 - window.b1) * (window.a2 - window.a1 + 1) + (s2 - window.a1))];
  }
};

ExponentMap exponent_map(const GridFunction& U, const Rational& A);

struct ExpansionRow {
  long b2 = 0;  // doubled top of R_{a,b'}
  bool good = false;
};

struct ExpansionResult {
  bool hypothesis_ok = false;
  long bad_cells = 0;   // cells of R_{a,3b} with |U| > 1
  long rect_cells = 0;  // |R|
  std::vector<long> band_lines;     // chosen doubled k per band, in band order
  std::vector<int> missing_bands;   // bands with no admissible line
  std::vector<double> log_M;        // log max over R_{a,b_k}, starting with R itself
  std::vector<ExpansionRow> rows;   // every b' in [3b/2, 2b]
  bool all_good = false;
};

/// Runs the expansion procedure on a good R with a(R) >= b(R).
ExpansionResult expand_good(const GridFunction& U, const SlopedRect& R, const GoodnessConfig& cfg);

/// Good squares inside ambient sharing a cell with seed and admitting no
/// good strict super-square inside ambient. Order: size descending, then
/// b1, then a1.
SquareFamily maximal_good_squares(const GridFunction& U, const SlopedRect& ambient, const GoodnessConfig& cfg,
                                  const SlopedRect& seed);

/// Greedy selection, largest first; ties by center (a1+a2, b1+b2), then index.
SquareFamily vitali_select(const SquareFamily& fam);

struct VitaliCheck {
  bool disjoint = true;
  bool covers = true;
  std::optional<SlopedCell> witness;
};

/// count random squares inside ambient with doubled side <= max_side.
SquareFamily random_square_family(SplitMix64& rng, const SlopedRect& ambient, int count, long max_side);

VitaliCheck verify_vitali(const SquareFamily& input, const SquareFamily& selected);

struct GoodSquareResult {
  long K = 0;
  bool found = false;
  long cells_QK = 0;
  long bad_QK = 0;
  bool hypothesis_ok = false;  // bad_QK <= bad_fraction * |Q_K|
  long family_size = 0;
  std::optional<SlopedRect> R0;
  long bad_in_9R0 = 0;
  bool dichotomy_ok = false;  // bad_in_9R0 * 10^5 < |R0|
  bool three_good = false;
  std::optional<SlopedRect> square;  // 3 R0 when found
  long selected = 0;                 // Vitali selection over {9R}
  long selected_cells = 0;           // sum of |R| over the selection
};

GoodSquareResult find_good_square(const GridFunction& U, long K, const GoodnessConfig& cfg);

}  // namespace dhl
