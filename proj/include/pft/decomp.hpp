#pragma once

// Multiscale dyadic decompositions of the 1D summation domain
//   D = {(x,k) : k < c_x} subset [0,N)^2
// and the 2D radial set
//   R = {(x1,x2,r) : r < c_x} subset [0,N)^3.
// Boxes are half-open on the integer lattice; a box is Inside when every
// lattice cell satisfies the constraint, Outside when none does.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "pft/cutoff.hpp"
#include "pft/point_set.hpp"

namespace pft {

struct Box1D {
  int x0 = 0;
  int k0 = 0;
  int s = 1;
  auto operator<=>(const Box1D&) const = default;
};

struct Box2D {
  int x1 = 0;  // footprint corner
  int x2 = 0;
  int r0 = 0;
  int s = 1;
  auto operator<=>(const Box2D&) const = default;
};

enum class BoxClass { Inside, Outside, Partial };

/// Min/max of c over every aligned dyadic interval. Level l holds n >> l entries.
class MinMaxTable1D {
 public:
  explicit MinMaxTable1D(const SampledCutoff1D& c);

  int n() const { return n_; }
  int levels() const { return static_cast<int>(min_.size()); }
  /// Aggregates over [index * 2^level, (index + 1) * 2^level).
  int min(int level, int index) const { return min_[static_cast<std::size_t>(level)][static_cast<std::size_t>(index)]; }
  int max(int level, int index) const { return max_[static_cast<std::size_t>(level)][static_cast<std::size_t>(index)]; }

 private:
  int n_;
  std::vector<std::vector<int>> min_;
  std::vector<std::vector<int>> max_;
};

/// Min/max of c over every aligned dyadic square; level l is (n>>l) x (n>>l).
class MinMaxTable2D {
 public:
  explicit MinMaxTable2D(const SampledCutoff2D& c);

  int n() const { return n_; }
  int levels() const { return static_cast<int>(min_.size()); }
  int min(int level, int i1, int i2) const { return min_[static_cast<std::size_t>(level)][offset(level, i1, i2)]; }
  int max(int level, int i1, int i2) const { return max_[static_cast<std::size_t>(level)][offset(level, i1, i2)]; }

 private:
  std::size_t offset(int level, int i1, int i2) const {
    return static_cast<std::size_t>(i1) * static_cast<std::size_t>(n_ >> level) + static_cast<std::size_t>(i2);
  }
  int n_;
  std::vector<std::vector<int>> min_;
  std::vector<std::vector<int>> max_;
};

MinMaxTable1D build_minmax(const SampledCutoff1D& c);
MinMaxTable2D build_minmax(const SampledCutoff2D& c);

BoxClass classify_box_1d(const Box1D& box, const MinMaxTable1D& table);
BoxClass classify_box_2d(const Box2D& box, const MinMaxTable2D& table);

struct Decomposition1D {
  int n = 0;
  /// Sorted by (x0, k0) within each size.
  std::map<int, std::vector<Box1D>> boxes_by_size;

  std::size_t box_count() const;
  std::size_t box_count(int s) const;
  /// sum of s^2; equals the number of lattice cells of D.
  std::int64_t cell_count() const;
  /// All boxes in (s, x0, k0) order.
  std::vector<Box1D> all_boxes() const;
};

struct Decomposition2D {
  int n = 0;
  /// Sorted by (x1, x2, r0) within each size.
  std::map<int, std::vector<Box2D>> boxes_by_size;

  std::size_t box_count() const;
  std::size_t box_count(int s) const;
  /// sum of s^3; equals the number of lattice cells of R.
  std::int64_t cell_count() const;
  std::vector<Box2D> all_boxes() const;
};

Decomposition1D decompose_1d(const SampledCutoff1D& c);
Decomposition2D decompose_2d(const SampledCutoff2D& c);

/// All k in [0,n)^2 with r0 <= |k|_2 < r0 + s, row-major.
PointSet ring_points(int r0, int s, int n);

/// The boxes G^A sharing the r-interval A = [r0, r0 + s), their x-footprint
/// X^A and the ring K^A.
struct RingGroup {
  int r0 = 0;
  int s = 1;
  std::vector<Box2D> boxes;
  PointSet footprint;
  PointSet ring;
};

/// One group per occupied r-interval, ordered by (s, r0). Every box lands in
/// exactly one group.
std::vector<RingGroup> group_by_interval(const Decomposition2D& d);

/// Same grouping without materialising footprint/ring point sets.
std::vector<RingGroup> group_boxes_by_interval(const Decomposition2D& d);

/// Fills footprint and ring of a group produced by group_boxes_by_interval.
void materialize(RingGroup& group, int n);

/// One box per line: "s x0 k0" (1D) or "s x1 x2 r0" (2D).
void write_decomposition(std::ostream& out, const Decomposition1D& d);
void write_decomposition(std::ostream& out, const Decomposition2D& d);

}  // namespace pft
