#pragma once

// Direct quadratic-cost evaluators. These are the ground truth for every
// accuracy check; they favour obvious correctness and a fixed summation order
// (ascending k, row-major) over speed.

#include <optional>
#include <span>
#include <vector>

#include "pft/cutoff.hpp"
#include "pft/point_set.hpp"
#include "pft/types.hpp"

namespace pft {

/// u_x = sum_{k < c_x} e^{2 pi i x k / n} f_k.
Field1D direct_pft_1d(const Field1D& f, const SampledCutoff1D& cutoff, int threads = 0);

/// Same sum evaluated only at the listed x.
std::vector<Complex> direct_pft_1d_at(const Field1D& f, const SampledCutoff1D& cutoff, std::span<const int> xs);

/// u_x = sum_{k in [0,n)^2, |k|_2 < c_x} e^{2 pi i x.k / n} f_k.
Field2D direct_pft_2d(const Field2D& f, const SampledCutoff2D& cutoff, int threads = 0);

std::vector<Complex> direct_pft_2d_at(const Field2D& f, const SampledCutoff2D& cutoff, std::span<const Point> xs);

/// u(x) = sum_{k in K} e^{2 pi i x.k / n} f_k for every x in X. `f` is aligned
/// with K's ordering; the result is aligned with X's ordering.
std::vector<Complex> direct_sparse_sum(const PointSet& X, const PointSet& K, std::span<const Complex> f,
                                       int threads = 0);

/// Seeded uniform sample of `sample_size` distinct indices from [0, total),
/// returned in ascending order. Deterministic for a fixed seed.
std::vector<std::size_t> sample_indices(std::size_t total, std::size_t sample_size, std::uint64_t seed);

/// Flat indices -> lattice points of an n x n row-major grid.
std::vector<Point> indices_to_points(std::span<const std::size_t> indices, int n);

/// sqrt(sum |exact - approx|^2 / sum |exact|^2); nullopt when the denominator
/// vanishes (the "undefined" error).
std::optional<double> relative_error(std::span<const Complex> exact, std::span<const Complex> approx);

/// relative_error restricted to a seeded sample S of the given size.
std::optional<double> relative_error_sampled(std::span<const Complex> exact, std::span<const Complex> approx,
                                             std::size_t sample_size, std::uint64_t seed);

}  // namespace pft
