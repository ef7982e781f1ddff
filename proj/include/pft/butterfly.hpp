#pragma once

// Butterfly evaluation of the sparse 2D Fourier sum
//
//   u(x) = sum_{k in K} e^{2 pi i x.k / N} f_k,   x in X,
//
// for point sets X, K in [0,N)^2. A quadtree over the bounding square of X
// and one over that of K are traversed in opposite directions, pairing boxes
// whose widths multiply to N, so the interaction between A and B is
// numerically low rank.
//
// For a pair (A,B) with centres c_A, c_B the kernel splits as
//   e^{2 pi i x.k/N} = e^{2 pi i x.c_B/N} e^{2 pi i (x-c_A).(k-c_B)/N} e^{2 pi i c_A.(k-c_B)/N}
// and the smooth middle factor is interpolated on a p x p tensor grid: in k
// (equivalent sources on B's grid) during the first half of the sweep, in x
// (values on A's grid) during the second half.

#include <span>
#include <vector>

#include "pft/point_set.hpp"
#include "pft/types.hpp"

namespace pft {

enum class NodeFamily { Uniform, Chebyshev };

/// p interpolation nodes per dimension, expressed in unit-box coordinates.
class GridSpec {
 public:
  explicit GridSpec(int p, NodeFamily family = NodeFamily::Uniform);

  int p() const { return p_; }
  NodeFamily family() const { return family_; }
  /// Strictly increasing, in [0,1].
  const std::vector<double>& nodes() const { return nodes_; }
  /// Lagrange basis polynomial m evaluated at unit coordinate nu.
  double lagrange(int m, double nu) const;

 private:
  int p_;
  NodeFamily family_;
  std::vector<double> nodes_;
};

/// Nonempty boxes of one quadtree depth. Box (i,j) at depth d covers
/// [i w, (i+1) w) x [j w, (j+1) w) with w = size >> d, in tree-local coordinates.
struct QuadLevel {
  int width = 0;
  std::vector<Point> boxes;      // row-major sorted box indices
  std::vector<int> parent;       // index into depth d-1 (empty at the root)
  std::vector<int> child_begin;  // CSR offsets into `children` (empty at the leaves)
  std::vector<int> children;     // indices into depth d+1
};

/// Quadtree over a point set, pruned to nonempty boxes; the leaves (width 1)
/// hold exactly one lattice point each, in the point set's order. The root
/// is the square [origin, origin + size)^2 with size a power of two.
struct QuadTree {
  Point origin;
  int size = 1;
  std::vector<QuadLevel> levels;

  /// Root placed at the componentwise minimum of the points, with the
  /// smallest power-of-two size covering their extent.
  static QuadTree build(const PointSet& points);
};

class ButterflyPlan {
 public:
  /// Sets must be nonempty and share n (a power of two >= 2). When
  /// allow_direct is set, inputs with min(|X|,|K|) < 4 p^2 are summed directly.
  ButterflyPlan(PointSet targets, PointSet sources, GridSpec grid, bool allow_direct = true);

  int n() const { return n_; }
  /// Levels S between the root pair and the final pair; step l pairs target
  /// depth l with source depth S - l, whose widths multiply to n.
  int steps() const { return steps_; }
  int switch_level() const { return steps_ / 2; }
  const GridSpec& grid() const { return grid_; }
  const PointSet& targets() const { return targets_; }
  const PointSet& sources() const { return sources_; }
  const QuadTree& target_tree() const { return target_tree_; }
  const QuadTree& source_tree() const { return source_tree_; }
  bool direct() const { return direct_; }

  /// Number of (A,B) pairs at step l.
  std::size_t pair_count(int step) const;
  std::size_t total_pairs() const;

 private:
  int n_;
  int steps_;
  GridSpec grid_;
  PointSet targets_;
  PointSet sources_;
  QuadTree target_tree_;
  QuadTree source_tree_;
  bool direct_;
};

/// f aligned with plan.sources(); result aligned with plan.targets().
std::vector<Complex> butterfly_apply(const ButterflyPlan& plan, std::span<const Complex> f, int threads = 0);

/// e^{2 pi i (x1 k1 + x2 k2) / n}
Complex kernel_phase(Point x, Point k, int n);

/// Minimum of |X|, |K| below which the direct sum is used.
inline std::size_t direct_fallback_threshold(const GridSpec& grid) {
  return 4 * static_cast<std::size_t>(grid.p()) * static_cast<std::size_t>(grid.p());
}

}  // namespace pft
