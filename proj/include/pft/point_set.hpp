#pragma once

#include <vector>

#include "pft/types.hpp"

namespace pft {

/// Strictly row-major-sorted, deduplicated lattice points in [0,n)^2.
class PointSet {
 public:
  PointSet() = default;
  /// Sorts and deduplicates; throws InvalidArgument for out-of-range points.
  PointSet(int n, std::vector<Point> points);

  int n() const { return n_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  bool contains(Point p) const;
  /// Index of p, or -1.
  std::ptrdiff_t find(Point p) const;

  /// All n*n points.
  static PointSet full_grid(int n);

 private:
  int n_ = 0;
  std::vector<Point> points_;
};

}  // namespace pft
