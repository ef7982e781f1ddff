#include "pft/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

namespace pft {

namespace {

Complex column_sum_1d(const Field1D& f, const PhaseTable& phase, int x, int cx) {
  Complex acc{};
  for (int k = 0; k < cx; ++k) acc += phase(static_cast<std::int64_t>(x) * k) * f[k];
  return acc;
}

Complex disc_sum_2d(const Field2D& f, const PhaseTable& phase, Point x, int cx) {
  const int n = f.n();
  const std::int64_t c2 = static_cast<std::int64_t>(cx) * cx;
  Complex acc{};
  for (int k1 = 0; k1 < std::min(cx, n); ++k1) {
    const auto k2_end = static_cast<int>(std::min<std::int64_t>(n, count_squares_below(c2 - std::int64_t{k1} * k1)));
    const std::int64_t base = static_cast<std::int64_t>(x.x1) * k1;
    for (int k2 = 0; k2 < k2_end; ++k2) {
      acc += phase(base + static_cast<std::int64_t>(x.x2) * k2) * f.at(k1, k2);
    }
  }
  return acc;
}

}  // namespace

Field1D direct_pft_1d(const Field1D& f, const SampledCutoff1D& cutoff, int threads) {
  if (f.n() != cutoff.n()) throw InvalidArgument("direct_pft_1d: field and cutoff sizes differ");
  const int n = f.n();
  const PhaseTable phase(n);
  Field1D u(n);
  [[maybe_unused]] const int workers = resolve_threads(threads);
#pragma omp parallel for schedule(dynamic, 64) num_threads(workers)
  for (int x = 0; x < n; ++x) u[x] = column_sum_1d(f, phase, x, cutoff[x]);
  return u;
}

std::vector<Complex> direct_pft_1d_at(const Field1D& f, const SampledCutoff1D& cutoff, std::span<const int> xs) {
  if (f.n() != cutoff.n()) throw InvalidArgument("direct_pft_1d_at: field and cutoff sizes differ");
  const PhaseTable phase(f.n());
  std::vector<Complex> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] < 0 || xs[i] >= f.n()) throw InvalidArgument("direct_pft_1d_at: x out of range");
    out[i] = column_sum_1d(f, phase, xs[i], cutoff[xs[i]]);
  }
  return out;
}

Field2D direct_pft_2d(const Field2D& f, const SampledCutoff2D& cutoff, int threads) {
  if (f.n() != cutoff.n()) throw InvalidArgument("direct_pft_2d: field and cutoff sizes differ");
  const int n = f.n();
  const PhaseTable phase(n);
  Field2D u(n);
  [[maybe_unused]] const int workers = resolve_threads(threads);
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
  for (int x1 = 0; x1 < n; ++x1) {
    for (int x2 = 0; x2 < n; ++x2) u.at(x1, x2) = disc_sum_2d(f, phase, {x1, x2}, cutoff.at(x1, x2));
  }
  return u;
}

std::vector<Complex> direct_pft_2d_at(const Field2D& f, const SampledCutoff2D& cutoff, std::span<const Point> xs) {
  if (f.n() != cutoff.n()) throw InvalidArgument("direct_pft_2d_at: field and cutoff sizes differ");
  const int n = f.n();
  const PhaseTable phase(n);
  std::vector<Complex> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Point x = xs[i];
    if (x.x1 < 0 || x.x1 >= n || x.x2 < 0 || x.x2 >= n) throw InvalidArgument("direct_pft_2d_at: x out of range");
    out[i] = disc_sum_2d(f, phase, x, cutoff.at(x.x1, x.x2));
  }
  return out;
}

std::vector<Complex> direct_sparse_sum(const PointSet& X, const PointSet& K, std::span<const Complex> f,
                                       int threads) {
  if (X.n() != K.n()) throw InvalidArgument("direct_sparse_sum: point sets live on different grids");
  if (f.size() != K.size()) throw InvalidArgument("direct_sparse_sum: f is not aligned with K");
  const PhaseTable phase(X.n());
  std::vector<Complex> u(X.size());
  const auto nx = static_cast<std::ptrdiff_t>(X.size());
  [[maybe_unused]] const int workers = resolve_threads(threads);
#pragma omp parallel for schedule(dynamic, 16) num_threads(workers) if (nx * static_cast<std::ptrdiff_t>(K.size()) > 65536)
  for (std::ptrdiff_t i = 0; i < nx; ++i) {
    const Point x = X[static_cast<std::size_t>(i)];
    Complex acc{};
    for (std::size_t j = 0; j < K.size(); ++j) {
      const Point k = K[j];
      acc += phase(static_cast<std::int64_t>(x.x1) * k.x1 + static_cast<std::int64_t>(x.x2) * k.x2) * f[j];
    }
    u[static_cast<std::size_t>(i)] = acc;
  }
  return u;
}

std::vector<std::size_t> sample_indices(std::size_t total, std::size_t sample_size, std::uint64_t seed) {
  if (sample_size > total) throw InvalidArgument("sample_indices: sample larger than population");
  // Floyd's algorithm: exactly sample_size distinct draws.
  std::mt19937_64 rng(seed);
  std::unordered_set<std::size_t> chosen;
  std::vector<std::size_t> out;
  out.reserve(sample_size);
  for (std::size_t j = total - sample_size; j < total; ++j) {
    std::uniform_int_distribution<std::size_t> pick(0, j);
    const std::size_t t = pick(rng);
    const std::size_t v = chosen.insert(t).second ? t : j;
    if (v == j) chosen.insert(j);
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Point> indices_to_points(std::span<const std::size_t> indices, int n) {
  std::vector<Point> pts;
  pts.reserve(indices.size());
  const auto un = static_cast<std::size_t>(n);
  for (std::size_t idx : indices) pts.push_back({static_cast<int>(idx / un), static_cast<int>(idx % un)});
  return pts;
}

std::optional<double> relative_error(std::span<const Complex> exact, std::span<const Complex> approx) {
  if (exact.size() != approx.size()) throw InvalidArgument("relative_error: size mismatch");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    num += std::norm(exact[i] - approx[i]);
    den += std::norm(exact[i]);
  }
  if (den == 0.0) return std::nullopt;
  return std::sqrt(num / den);
}

std::optional<double> relative_error_sampled(std::span<const Complex> exact, std::span<const Complex> approx,
                                             std::size_t sample_size, std::uint64_t seed) {
  if (exact.size() != approx.size()) throw InvalidArgument("relative_error_sampled: size mismatch");
  const auto idx = sample_indices(exact.size(), sample_size, seed);
  std::vector<Complex> e;
  std::vector<Complex> a;
  e.reserve(idx.size());
  a.reserve(idx.size());
  for (std::size_t i : idx) {
    e.push_back(exact[i]);
    a.push_back(approx[i]);
  }
  return relative_error(e, a);
}

}  // namespace pft
