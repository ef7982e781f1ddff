#include "pft/pft2d.hpp"

#include "pft/oracle.hpp"

namespace pft {

std::vector<Complex> ring_group_contribution(const RingGroup& g, const Field2D& f, const Pft2dOptions& options) {
  if (g.footprint.n() != f.n() || g.ring.n() != f.n()) {
    throw InvalidArgument("ring_group_contribution: group was not materialized on this grid");
  }
  if (g.footprint.empty() || g.ring.empty()) return std::vector<Complex>(g.footprint.size());

  std::vector<Complex> weights;
  weights.reserve(g.ring.size());
  for (const Point& k : g.ring) weights.push_back(f.at(k));

  if (options.evaluator == GroupEvaluator::Direct) {
    return direct_sparse_sum(g.footprint, g.ring, weights, options.threads);
  }
  const ButterflyPlan plan(g.footprint, g.ring, options.grid);
  return butterfly_apply(plan, weights, options.threads);
}

Field2D pft2d_apply(const Field2D& f, const SampledCutoff2D& c, const Pft2dOptions& options) {
  if (f.n() != c.n()) throw InvalidArgument("pft2d_apply: field and cutoff sizes differ");
  return pft2d_apply(f, decompose_2d(c), options);
}

Field2D pft2d_apply(const Field2D& f, const Decomposition2D& d, const Pft2dOptions& options) {
  if (f.n() != d.n) throw InvalidArgument("pft2d_apply: field and decomposition sizes differ");
  const int n = f.n();
  Field2D u(n);
  // Groups come in (s, r0) order and are accumulated in that order.
  for (RingGroup& g : group_boxes_by_interval(d)) {
    materialize(g, n);
    const std::vector<Complex> part = ring_group_contribution(g, f, options);
    for (std::size_t i = 0; i < part.size(); ++i) u.at(g.footprint[i]) += part[i];
  }
  return u;
}

}  // namespace pft
