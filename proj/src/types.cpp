#include "pft/types.hpp"

#include <cmath>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pft {

PhaseTable::PhaseTable(int n) : n_(n), mask_(n - 1), table_(static_cast<std::size_t>(n)) {
  require_power_of_two(n, "phase table size");
  for (int m = 0; m < n; ++m) {
    const double a = kTwoPi * static_cast<double>(m) / static_cast<double>(n);
    table_[static_cast<std::size_t>(m)] = {std::cos(a), std::sin(a)};
  }
}

Field2D::Field2D(int n, std::vector<Complex> values) : n_(n), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw InvalidArgument("Field2D: value count does not match n*n");
  }
}

double relative_l2_error(std::span<const Complex> approx, std::span<const Complex> exact) {
  if (approx.size() != exact.size()) throw InvalidArgument("relative_l2_error: size mismatch");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    num += std::norm(approx[i] - exact[i]);
    den += std::norm(exact[i]);
  }
  if (den == 0.0) return num == 0.0 ? 0.0 : INFINITY;
  return std::sqrt(num / den);
}

std::vector<Complex> random_complex(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Complex> out(count);
  for (auto& v : out) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v = {re, im};
  }
  return out;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace pft

#include <algorithm>

#include "pft/point_set.hpp"

namespace pft {

PointSet::PointSet(int n, std::vector<Point> points) : n_(n), points_(std::move(points)) {
  if (n <= 0) throw InvalidArgument("PointSet: n must be positive");
  for (const Point& p : points_) {
    if (p.x1 < 0 || p.x1 >= n || p.x2 < 0 || p.x2 >= n) {
      throw InvalidArgument("PointSet: point (" + std::to_string(p.x1) + "," + std::to_string(p.x2) +
                            ") outside [0," + std::to_string(n) + ")^2");
    }
  }
  if (!std::is_sorted(points_.begin(), points_.end())) std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

bool PointSet::contains(Point p) const { return std::binary_search(points_.begin(), points_.end(), p); }

std::ptrdiff_t PointSet::find(Point p) const {
  const auto it = std::lower_bound(points_.begin(), points_.end(), p);
  if (it == points_.end() || *it != p) return -1;
  return it - points_.begin();
}

PointSet PointSet::full_grid(int n) {
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) pts.push_back({i, j});
  }
  return {n, std::move(pts)};
}

}  // namespace pft
