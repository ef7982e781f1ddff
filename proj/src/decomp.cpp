#include "pft/decomp.hpp"

#include <algorithm>
#include <ostream>
#include <tuple>

namespace pft {

MinMaxTable1D::MinMaxTable1D(const SampledCutoff1D& c) : n_(c.n()) {
  min_.push_back(c.values());
  max_.push_back(c.values());
  for (int len = n_ / 2; len >= 1; len /= 2) {
    const auto& pmin = min_.back();
    const auto& pmax = max_.back();
    std::vector<int> lmin(static_cast<std::size_t>(len));
    std::vector<int> lmax(static_cast<std::size_t>(len));
    for (std::size_t i = 0; i < lmin.size(); ++i) {
      lmin[i] = std::min(pmin[2 * i], pmin[2 * i + 1]);
      lmax[i] = std::max(pmax[2 * i], pmax[2 * i + 1]);
    }
    min_.push_back(std::move(lmin));
    max_.push_back(std::move(lmax));
  }
}

MinMaxTable2D::MinMaxTable2D(const SampledCutoff2D& c) : n_(c.n()) {
  min_.push_back(c.values());
  max_.push_back(c.values());
  for (int len = n_ / 2; len >= 1; len /= 2) {
    const auto& pmin = min_.back();
    const auto& pmax = max_.back();
    const auto plen = static_cast<std::size_t>(2 * len);
    const auto ulen = static_cast<std::size_t>(len);
    std::vector<int> lmin(ulen * ulen);
    std::vector<int> lmax(ulen * ulen);
    for (std::size_t i = 0; i < ulen; ++i) {
      for (std::size_t j = 0; j < ulen; ++j) {
        const std::size_t a = (2 * i) * plen + 2 * j;
        const std::size_t b = a + plen;
        lmin[i * ulen + j] = std::min({pmin[a], pmin[a + 1], pmin[b], pmin[b + 1]});
        lmax[i * ulen + j] = std::max({pmax[a], pmax[a + 1], pmax[b], pmax[b + 1]});
      }
    }
    min_.push_back(std::move(lmin));
    max_.push_back(std::move(lmax));
  }
}

MinMaxTable1D build_minmax(const SampledCutoff1D& c) { return MinMaxTable1D(c); }
MinMaxTable2D build_minmax(const SampledCutoff2D& c) { return MinMaxTable2D(c); }

BoxClass classify_box_1d(const Box1D& box, const MinMaxTable1D& table) {
  const int level = log2_exact(box.s);
  const int index = box.x0 / box.s;
  if (box.k0 + box.s <= table.min(level, index)) return BoxClass::Inside;
  if (box.k0 >= table.max(level, index)) return BoxClass::Outside;
  return BoxClass::Partial;
}

BoxClass classify_box_2d(const Box2D& box, const MinMaxTable2D& table) {
  const int level = log2_exact(box.s);
  const int i1 = box.x1 / box.s;
  const int i2 = box.x2 / box.s;
  if (box.r0 + box.s <= table.min(level, i1, i2)) return BoxClass::Inside;
  if (box.r0 >= table.max(level, i1, i2)) return BoxClass::Outside;
  return BoxClass::Partial;
}

namespace {

template <class Map>
std::size_t count_boxes(const Map& m) {
  std::size_t total = 0;
  for (const auto& [s, boxes] : m) total += boxes.size();
  return total;
}

template <class Map>
std::size_t count_boxes(const Map& m, int s) {
  const auto it = m.find(s);
  return it == m.end() ? 0 : it->second.size();
}

template <class Map>
auto flatten(const Map& m) {
  std::vector<typename Map::mapped_type::value_type> out;
  for (const auto& [s, boxes] : m) out.insert(out.end(), boxes.begin(), boxes.end());
  return out;
}

}  // namespace

std::size_t Decomposition1D::box_count() const { return count_boxes(boxes_by_size); }
std::size_t Decomposition1D::box_count(int s) const { return count_boxes(boxes_by_size, s); }
std::vector<Box1D> Decomposition1D::all_boxes() const { return flatten(boxes_by_size); }

std::int64_t Decomposition1D::cell_count() const {
  std::int64_t total = 0;
  for (const auto& [s, boxes] : boxes_by_size) total += static_cast<std::int64_t>(s) * s * static_cast<std::int64_t>(boxes.size());
  return total;
}

std::size_t Decomposition2D::box_count() const { return count_boxes(boxes_by_size); }
std::size_t Decomposition2D::box_count(int s) const { return count_boxes(boxes_by_size, s); }
std::vector<Box2D> Decomposition2D::all_boxes() const { return flatten(boxes_by_size); }

std::int64_t Decomposition2D::cell_count() const {
  std::int64_t total = 0;
  for (const auto& [s, boxes] : boxes_by_size) {
    total += static_cast<std::int64_t>(s) * s * s * static_cast<std::int64_t>(boxes.size());
  }
  return total;
}

Decomposition1D decompose_1d(const SampledCutoff1D& c) {
  const MinMaxTable1D table(c);
  Decomposition1D d{c.n(), {}};
  std::vector<Box1D> stack{{0, 0, c.n()}};
  while (!stack.empty()) {
    const Box1D box = stack.back();
    stack.pop_back();
    switch (classify_box_1d(box, table)) {
      case BoxClass::Inside:
        d.boxes_by_size[box.s].push_back(box);
        break;
      case BoxClass::Outside:
        break;
      case BoxClass::Partial: {
        // A single cell is either in or out, so s > 1 here.
        const int h = box.s / 2;
        for (int a = 0; a < 2; ++a) {
          for (int b = 0; b < 2; ++b) stack.push_back({box.x0 + a * h, box.k0 + b * h, h});
        }
        break;
      }
    }
  }
  for (auto& [s, boxes] : d.boxes_by_size) std::sort(boxes.begin(), boxes.end(), [](const Box1D& a, const Box1D& b) {
      return std::tie(a.x0, a.k0) < std::tie(b.x0, b.k0);
    });
  return d;
}

Decomposition2D decompose_2d(const SampledCutoff2D& c) {
  const MinMaxTable2D table(c);
  Decomposition2D d{c.n(), {}};
  std::vector<Box2D> stack{{0, 0, 0, c.n()}};
  while (!stack.empty()) {
    const Box2D box = stack.back();
    stack.pop_back();
    switch (classify_box_2d(box, table)) {
      case BoxClass::Inside:
        d.boxes_by_size[box.s].push_back(box);
        break;
      case BoxClass::Outside:
        break;
      case BoxClass::Partial: {
        const int h = box.s / 2;
        for (int a = 0; a < 2; ++a) {
          for (int b = 0; b < 2; ++b) {
            for (int r = 0; r < 2; ++r) stack.push_back({box.x1 + a * h, box.x2 + b * h, box.r0 + r * h, h});
          }
        }
        break;
      }
    }
  }
  for (auto& [s, boxes] : d.boxes_by_size) std::sort(boxes.begin(), boxes.end(), [](const Box2D& a, const Box2D& b) {
      return std::tie(a.x1, a.x2, a.r0) < std::tie(b.x1, b.x2, b.r0);
    });
  return d;
}

PointSet ring_points(int r0, int s, int n) {
  if (r0 < 0 || s < 1 || n < 1) throw InvalidArgument("ring_points: need r0 >= 0, s >= 1, n >= 1");
  const std::int64_t inner = static_cast<std::int64_t>(r0) * r0;
  const std::int64_t outer = static_cast<std::int64_t>(r0 + s) * (r0 + s);
  std::vector<Point> pts;
  for (int k1 = 0; k1 < n; ++k1) {
    const std::int64_t k1sq = static_cast<std::int64_t>(k1) * k1;
    if (k1sq >= outer) break;
    const auto lo = static_cast<int>(std::min<std::int64_t>(n, count_squares_below(inner - k1sq)));
    const auto hi = static_cast<int>(std::min<std::int64_t>(n, count_squares_below(outer - k1sq)));
    for (int k2 = lo; k2 < hi; ++k2) pts.push_back({k1, k2});
  }
  return {n, std::move(pts)};
}

std::vector<RingGroup> group_boxes_by_interval(const Decomposition2D& d) {
  std::map<std::pair<int, int>, RingGroup> groups;  // keyed by (s, r0)
  for (const auto& [s, boxes] : d.boxes_by_size) {
    for (const Box2D& b : boxes) {
      auto& g = groups[{s, b.r0}];
      g.r0 = b.r0;
      g.s = s;
      g.boxes.push_back(b);
    }
  }
  std::vector<RingGroup> out;
  out.reserve(groups.size());
  for (auto& [key, g] : groups) out.push_back(std::move(g));
  return out;
}

void materialize(RingGroup& group, int n) {
  std::vector<Point> pts;
  pts.reserve(group.boxes.size() * static_cast<std::size_t>(group.s) * static_cast<std::size_t>(group.s));
  for (const Box2D& b : group.boxes) {
    for (int i = 0; i < b.s; ++i) {
      for (int j = 0; j < b.s; ++j) pts.push_back({b.x1 + i, b.x2 + j});
    }
  }
  std::sort(pts.begin(), pts.end());
  group.footprint = PointSet(n, std::move(pts));
  group.ring = ring_points(group.r0, group.s, n);
}

std::vector<RingGroup> group_by_interval(const Decomposition2D& d) {
  auto groups = group_boxes_by_interval(d);
  for (auto& g : groups) materialize(g, d.n);
  return groups;
}

void write_decomposition(std::ostream& out, const Decomposition1D& d) {
  for (const auto& [s, boxes] : d.boxes_by_size) {
    for (const Box1D& b : boxes) out << s << ' ' << b.x0 << ' ' << b.k0 << '\n';
  }
}

void write_decomposition(std::ostream& out, const Decomposition2D& d) {
  for (const auto& [s, boxes] : d.boxes_by_size) {
    for (const Box2D& b : boxes) out << s << ' ' << b.x1 << ' ' << b.x2 << ' ' << b.r0 << '\n';
  }
}

}  // namespace pft
