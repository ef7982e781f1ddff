#pragma once

// Approximate 2D partial Fourier transform
//   u_x = sum_{|k| < c_x} e^{2 pi i x.k / N} f_k
// in O(N^2 log^2 N): decompose the radial set R, group its boxes by dyadic
// r-interval A, and run one sparse Fourier sum (butterfly) per group between
// the footprint X^A and the ring K^A.

#include <span>
#include <vector>

#include "pft/butterfly.hpp"
#include "pft/cutoff.hpp"
#include "pft/decomp.hpp"

namespace pft {

enum class GroupEvaluator {
  Butterfly,  // with the small-input direct fallback
  Direct,     // exact direct_sparse_sum for every group
};

struct Pft2dOptions {
  GridSpec grid{9};
  GroupEvaluator evaluator = GroupEvaluator::Butterfly;
  int threads = 0;
};

/// Sum over the group's ring for every point of its footprint; the result is
/// aligned with g.footprint. The group must be materialized.
std::vector<Complex> ring_group_contribution(const RingGroup& g, const Field2D& f, const Pft2dOptions& options);

Field2D pft2d_apply(const Field2D& f, const SampledCutoff2D& c, const Pft2dOptions& options = {});
Field2D pft2d_apply(const Field2D& f, const Decomposition2D& d, const Pft2dOptions& options = {});

}  // namespace pft
