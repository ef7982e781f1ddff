#include <doctest.h>

#include <cmath>
#include <vector>

#include "pft/fft.hpp"
#include "pft/oracle.hpp"
#include "pft/pft1d.hpp"

using namespace pft;

TEST_CASE("box contribution at the origin is the frft") {
  const int n = 64;
  const auto f = random_complex(n, 1);
  const FrftPlan plan(8, n);
  const auto v = box_contribution({0, 0, 8}, f, plan);
  CHECK(v == plan.apply(std::span<const Complex>(f).first(8)));
}

TEST_CASE("size-one box") {
  const int n = 64;
  const auto f = random_complex(n, 2);
  const FrftPlan plan(1, n);
  const auto v = box_contribution({5, 9, 1}, f, plan);
  REQUIRE(v.size() == 1);
  CHECK(std::abs(v[0] - std::polar(1.0, kTwoPi * 45 / 64) * f[9]) <= 1e-14);
}

TEST_CASE("box contribution against a double loop") {
  const int n = 64;
  const auto f = random_complex(n, 3);
  for (int threshold : {0, 16}) {
    const FrftPlan plan(8, n, threshold);
    for (Box1D box : {Box1D{8, 24, 8}, Box1D{56, 48, 8}, Box1D{32, 0, 8}}) {
      const auto v = box_contribution(box, f, plan);
      for (int x = 0; x < 8; ++x) {
        Complex s;
        for (int k = 0; k < 8; ++k) {
          const int xx = box.x0 + x, kk = box.k0 + k;
          s += std::polar(1.0, kTwoPi * double(xx * kk % n) / n) * f[std::size_t(kk)];
        }
        CHECK(std::abs(s - v[std::size_t(x)]) <= 1e-13);
      }
    }
  }
}

TEST_CASE("full cutoff is the FFT with one box") {
  const int n = 256;
  const Field1D f(random_complex(n, 4));
  const SampledCutoff1D c(n, std::vector<int>(n, n));
  CHECK(decompose_1d(c).box_count() == 1);
  CHECK(*relative_error(fft(f.values(), FftSign::Positive), pft1d_apply(f, c).values()) <= 1e-12);
}

TEST_CASE("delta input") {
  const int n = 128;
  Field1D delta(n);
  delta[0] = 1.0;
  const auto c = sample_cutoff_1d(profile1d_by_name("velocity"), n);
  const auto u = pft1d_apply(delta, c);
  for (int x = 0; x < n; ++x) CHECK(std::abs(u[x] - (c[x] >= 1 ? 1.0 : 0.0)) <= 1e-12);
}

TEST_CASE("exact against the oracle") {
  for (const auto& name : builtin_profile_names_1d()) {
    for (int n : {64, 256, 1024, 4096}) {
      const Field1D f(random_complex(std::size_t(n), std::uint64_t(n)));
      const auto c = sample_cutoff_1d(profile1d_by_name(name), n);
      const auto err = relative_error(direct_pft_1d(f, c).values(), pft1d_apply(f, c).values());
      INFO(name << " n=" << n);
      CHECK((!err || *err <= 1e-10));
    }
  }
  const int n = 1024;
  const Field1D f(random_complex(n, 5));
  const auto c = sample_cutoff_1d(profile1d_by_name("sine"), n);
  CHECK(*relative_error(direct_pft_1d(f, c).values(), pft1d_apply(f, c, {0, 0}).values()) <= 1e-12);
}

TEST_CASE("disjoint cutoffs add up") {
  const int n = 256;
  const Field1D f(random_complex(n, 6));
  const auto c = sample_cutoff_1d(profile1d_by_name("sine"), n);
  std::vector<int> left(n, 0), right(n, 0);
  for (int x = 0; x < n; ++x) (x < n / 2 ? left : right)[std::size_t(x)] = c[x];
  const auto u = pft1d_apply(f, c);
  const auto ul = pft1d_apply(f, SampledCutoff1D(n, left));
  const auto ur = pft1d_apply(f, SampledCutoff1D(n, right));
  for (int x = 0; x < n; ++x) {
    const Complex part = x < n / 2 ? ul[x] : ur[x];
    CHECK(std::abs(u[x] - part) <= 1e-10);
  }
}

TEST_CASE("repeated runs are bitwise identical") {
  const int n = 2048;
  const Field1D f(random_complex(n, 7));
  const auto c = sample_cutoff_1d(profile1d_by_name("sine"), n);
  const auto d = decompose_1d(c);
  const auto a = pft1d_apply(f, d, {1});
  CHECK(a == pft1d_apply(f, d, {1}));
  CHECK(a == pft1d_apply(f, c, {1}));
}

TEST_CASE("size mismatch") {
  const Field1D f(random_complex(32, 8));
  const auto c = sample_cutoff_1d(profile1d_by_name("sine"), 64);
  CHECK_THROWS_AS(pft1d_apply(f, c), InvalidArgument);
}
