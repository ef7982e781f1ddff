#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "pft/decomp.hpp"

using namespace pft;

namespace {

SampledCutoff1D const_cutoff_1d(int n, int c) { return SampledCutoff1D(n, std::vector<int>(std::size_t(n), c)); }
SampledCutoff2D const_cutoff_2d(int n, int c) { return SampledCutoff2D(n, std::vector<int>(std::size_t(n) * n, c)); }

int cover_count_1d(const Decomposition1D& d, int x, int k) {
  int hits = 0;
  for (const Box1D& b : d.all_boxes()) hits += (x >= b.x0 && x < b.x0 + b.s && k >= b.k0 && k < b.k0 + b.s);
  return hits;
}

}  // namespace

TEST_CASE("minmax example") {
  const MinMaxTable1D t = build_minmax(SampledCutoff1D(8, {3, 5, 2, 7, 8, 8, 8, 8}));
  REQUIRE(t.levels() == 4);
  CHECK(t.min(1, 0) == 3);
  CHECK(t.max(1, 0) == 5);
  CHECK(t.min(1, 1) == 2);
  CHECK(t.max(1, 1) == 7);
  CHECK(t.min(2, 0) == 2);
  CHECK(t.max(2, 0) == 7);

  const MinMaxTable1D k = build_minmax(const_cutoff_1d(16, 5));
  for (int l = 0; l < k.levels(); ++l) {
    for (int i = 0; i < (16 >> l); ++i) {
      CHECK(k.min(l, i) == 5);
      CHECK(k.max(l, i) == 5);
    }
  }
}

TEST_CASE("minmax against brute force") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> val(0, 64);
  const int n = 64;
  std::vector<int> c(n);
  for (int& v : c) v = val(rng);
  const MinMaxTable1D t = build_minmax(SampledCutoff1D(n, c));
  for (int l = 0; l < t.levels(); ++l) {
    const int w = 1 << l;
    for (int i = 0; i < n / w; ++i) {
      const auto b = c.begin() + i * w;
      CHECK(t.min(l, i) == *std::min_element(b, b + w));
      CHECK(t.max(l, i) == *std::max_element(b, b + w));
    }
  }

  const int m = 16;
  std::uniform_int_distribution<int> val2(0, m);
  std::vector<int> c2(std::size_t(m) * m);
  for (int& v : c2) v = val2(rng);
  const MinMaxTable2D t2 = build_minmax(SampledCutoff2D(m, c2));
  for (int l = 0; l < t2.levels(); ++l) {
    const int w = 1 << l;
    for (int i = 0; i < m / w; ++i) {
      for (int j = 0; j < m / w; ++j) {
        int lo = m + 1, hi = -1;
        for (int a = i * w; a < (i + 1) * w; ++a) {
          for (int b = j * w; b < (j + 1) * w; ++b) {
            lo = std::min(lo, c2[std::size_t(a * m + b)]);
            hi = std::max(hi, c2[std::size_t(a * m + b)]);
          }
        }
        CHECK(t2.min(l, i, j) == lo);
        CHECK(t2.max(l, i, j) == hi);
      }
    }
  }
}

TEST_CASE("box classification") {
  const auto full = build_minmax(const_cutoff_1d(8, 8));
  const auto empty = build_minmax(const_cutoff_1d(8, 0));
  for (int s = 1; s <= 8; s *= 2) {
    for (int x0 = 0; x0 < 8; x0 += s) {
      for (int k0 = 0; k0 < 8; k0 += s) {
        CHECK(classify_box_1d({x0, k0, s}, full) == BoxClass::Inside);
        CHECK(classify_box_1d({x0, k0, s}, empty) == BoxClass::Outside);
      }
    }
  }
  const auto lin = build_minmax(SampledCutoff1D(8, {0, 1, 2, 3, 4, 5, 6, 7}));
  CHECK(classify_box_1d({0, 0, 4}, lin) == BoxClass::Partial);
  CHECK(classify_box_1d({4, 0, 4}, lin) == BoxClass::Inside);
  CHECK(classify_box_1d({0, 4, 4}, lin) == BoxClass::Outside);
}

TEST_CASE("trivial decompositions") {
  const auto d = decompose_1d(const_cutoff_1d(16, 16));
  REQUIRE(d.box_count() == 1);
  CHECK(d.all_boxes().front() == Box1D{0, 0, 16});
  CHECK(decompose_1d(const_cutoff_1d(16, 0)).box_count() == 0);

  const auto d2 = decompose_2d(const_cutoff_2d(16, 16));
  REQUIRE(d2.box_count() == 1);
  CHECK(d2.all_boxes().front() == Box2D{0, 0, 0, 16});
  CHECK(decompose_2d(const_cutoff_2d(16, 0)).box_count() == 0);
  CHECK(group_by_interval(decompose_2d(const_cutoff_2d(16, 0))).empty());
}

TEST_CASE("1D partition of the domain") {
  for (const auto& name : builtin_profile_names_1d()) {
    for (int n : {16, 64}) {
      const auto c = sample_cutoff_1d(profile1d_by_name(name), n);
      const auto d = decompose_1d(c);
      CHECK(d.cell_count() == c.total());
      for (int x = 0; x < n; ++x) {
        for (int k = 0; k < n; ++k) CHECK(cover_count_1d(d, x, k) == (k < c[x] ? 1 : 0));
      }
      for (const Box1D& b : d.all_boxes()) {
        CHECK(b.x0 % b.s == 0);
        CHECK(b.k0 % b.s == 0);
      }
    }
    for (int n = 2; n <= 256; n *= 2) {
      const auto c = sample_cutoff_1d(profile1d_by_name(name), n);
      CHECK(decompose_1d(c).cell_count() == c.total());
    }
  }
}

TEST_CASE("1D membership of random cells") {
  std::mt19937_64 rng(2);
  const int n = 256;
  for (const auto& name : builtin_profile_names_1d()) {
    const auto c = sample_cutoff_1d(profile1d_by_name(name), n);
    const auto d = decompose_1d(c);
    std::vector<int> cover(std::size_t(n) * n, 0);
    for (const Box1D& b : d.all_boxes()) {
      for (int x = b.x0; x < b.x0 + b.s; ++x) {
        for (int k = b.k0; k < b.k0 + b.s; ++k) ++cover[std::size_t(x) * n + std::size_t(k)];
      }
    }
    std::uniform_int_distribution<int> coord(0, n - 1);
    for (int t = 0; t < 100000; ++t) {
      const int x = coord(rng), k = coord(rng);
      REQUIRE(cover[std::size_t(x) * n + std::size_t(k)] == (k < c[x] ? 1 : 0));
    }
  }
}

TEST_CASE("2D partition of the radial set") {
  for (const auto& name : builtin_profile_names_2d()) {
    const int n = 16;
    const auto c = sample_cutoff_2d(profile2d_by_name(name), n);
    const auto d = decompose_2d(c);
    std::vector<int> cover(std::size_t(n) * n * n, 0);
    for (const Box2D& b : d.all_boxes()) {
      CHECK(b.x1 % b.s == 0);
      CHECK(b.x2 % b.s == 0);
      CHECK(b.r0 % b.s == 0);
      for (int i = b.x1; i < b.x1 + b.s; ++i) {
        for (int j = b.x2; j < b.x2 + b.s; ++j) {
          for (int r = b.r0; r < b.r0 + b.s; ++r) ++cover[(std::size_t(i) * n + std::size_t(j)) * n + std::size_t(r)];
        }
      }
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int r = 0; r < n; ++r) CHECK(cover[(std::size_t(i) * n + std::size_t(j)) * n + std::size_t(r)] == (r < c.at(i, j) ? 1 : 0));
      }
    }
    for (int m = 2; m <= 256; m *= 2) {
      const auto cm = sample_cutoff_2d(profile2d_by_name(name), m);
      CHECK(decompose_2d(cm).cell_count() == cm.total());
    }
  }
}

TEST_CASE("1D box count bound") {
  const int n = 1024;
  const auto d = decompose_1d(sample_cutoff_1d(profile1d_by_name("sine"), n));
  for (const auto& [s, boxes] : d.boxes_by_size) CHECK(boxes.size() <= std::size_t(8 * n / s));
}

TEST_CASE("ring points") {
  CHECK(ring_points(0, 1, 8).points() == std::vector<Point>{{0, 0}});
  CHECK(ring_points(1, 1, 8).points() == std::vector<Point>{{0, 1}, {1, 0}, {1, 1}});
  std::vector<Point> brute;
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      if (a * a + b * b >= 4 && a * a + b * b < 16) brute.push_back({a, b});
    }
  }
  CHECK(ring_points(2, 2, 8).points() == brute);
  CHECK(ring_points(16, 8, 8).empty());
}

TEST_CASE("rings partition the disk") {
  const int n = 32;
  for (int s = 1; s <= 16; s *= 2) {
    std::vector<Point> all;
    for (int r0 = 0; r0 < 2 * n; r0 += s) {
      const auto ring = ring_points(r0, s, n);
      all.insert(all.end(), ring.begin(), ring.end());
    }
    std::sort(all.begin(), all.end());
    CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
    CHECK(all.size() == std::size_t(n) * n);
  }
}

TEST_CASE("single root group") {
  const int n = 8;
  const auto groups = group_by_interval(decompose_2d(const_cutoff_2d(n, n)));
  REQUIRE(groups.size() == 1);
  CHECK(groups[0].r0 == 0);
  CHECK(groups[0].s == n);
  CHECK(groups[0].footprint.size() == std::size_t(n) * n);
  CHECK(groups[0].ring.points() == ring_points(0, n, n).points());
}

TEST_CASE("group coverage") {
  const int n = 32;
  const auto c = sample_cutoff_2d(profile2d_by_name("gaussian"), n);
  const auto d = decompose_2d(c);
  const auto groups = group_by_interval(d);
  std::size_t boxes = 0;
  for (const RingGroup& g : groups) {
    boxes += g.boxes.size();
    for (const Box2D& b : g.boxes) {
      CHECK(b.r0 == g.r0);
      CHECK(b.s == g.s);
      for (int i = b.x1; i < b.x1 + b.s; ++i) {
        for (int j = b.x2; j < b.x2 + b.s; ++j) CHECK(g.footprint.contains({i, j}));
      }
    }
    CHECK(g.ring.points() == ring_points(g.r0, g.s, n).points());
  }
  CHECK(boxes == d.box_count());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int r = 0; r < c.at(i, j); ++r) {
        int hits = 0;
        for (const RingGroup& g : groups) hits += (r >= g.r0 && r < g.r0 + g.s && g.footprint.contains({i, j}));
        REQUIRE(hits == 1);
      }
    }
  }
  auto lazy = group_boxes_by_interval(d);
  REQUIRE(lazy.size() == groups.size());
  for (std::size_t i = 0; i < lazy.size(); ++i) {
    materialize(lazy[i], n);
    CHECK(lazy[i].footprint.points() == groups[i].footprint.points());
    CHECK(lazy[i].ring.points() == groups[i].ring.points());
  }
}

TEST_CASE("decomposition dump") {
  std::ostringstream out;
  write_decomposition(out, decompose_1d(const_cutoff_1d(4, 4)));
  CHECK(out.str() == "4 0 0\n");
  std::ostringstream out2;
  write_decomposition(out2, decompose_2d(const_cutoff_2d(4, 4)));
  CHECK(out2.str() == "4 0 0 0\n");
}
