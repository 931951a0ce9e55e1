#pragma once

// Exact example functions.
//   chelkak34  u(n,m) = sin(pi n / 2) (2+sqrt3)^m          in Q(sqrt 3)
//   eigen2d    u0(x,y) = (-1)^x on x = y, 0 elsewhere       rational
//   lift3d     u(x,y,z) = (3+2sqrt2)^z u0(x,y)              in Q(sqrt 2)
//   halfplane  random diagonal seeds, zero on n - m >= 0    rational

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "dhl/extension.hpp"
#include "dhl/rng.hpp"

namespace dhl {

/// Values over the cube [lo, lo + side)^3, x fastest.
class Grid3Function {
 public:
  Grid3Function() = default;
  Grid3Function(long lo, long side, const ScalarKind& kind);

  long lo() const { return lo_; }
  long side() const { return side_; }
  const ScalarKind& kind() const { return kind_; }
  bool in_window(long x, long y, long z) const;
  const Scalar& at(long x, long y, long z) const;
  void set(long x, long y, long z, Scalar v);

 private:
  std::size_t index(long x, long y, long z) const;
  long lo_ = 0, side_ = 0;
  ScalarKind kind_;
  std::vector<Scalar> values_;
};

/// Six-neighbour sum minus 6 u(x,y,z); all neighbours must be in the window.
Scalar residual3(const Grid3Function& u, long x, long y, long z);

struct ExampleSpec {
  std::string name;        // chelkak34, halfplane, eigen2d, lift3d
  long N = 10;             // window radius (lift3d: cube [-N, N]^3)
  std::uint64_t seed = 1;  // halfplane seeds
};

ScalarKind chelkak_kind();  // quadratic(3)
ScalarKind lift_kind();     // quadratic(2)

Scalar chelkak34_value(Cell c);
/// Evaluator with cached powers for |m| <= radius.
std::function<Scalar(Cell)> chelkak34_evaluator(long radius);
GridFunction chelkak34(long N);
GridFunction eigen2d(long N);
Grid3Function lift3d(long lo, long side);
/// Seeds t_d uniform rationals in [-1, 1] with denominators <= 16.
DiagonalSeed random_diagonal_seed(long N, SplitMix64& rng);
GridFunction halfplane_example(long N, std::uint64_t seed);

using Example = std::variant<GridFunction, Grid3Function>;
Example build_example(const ExampleSpec& spec);

/// Laplacian residual equals lambda u0 at every cell whose stencil is set.
bool check_eigen(const GridFunction& u0, const Scalar& lambda, const ToleranceProfile& tol = {});

}  // namespace dhl
