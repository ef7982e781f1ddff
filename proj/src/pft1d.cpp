#include "pft/pft1d.hpp"

#include <memory>

namespace pft {

void box_contribution(const Box1D& box, std::span<const Complex> f, const FrftPlan& plan, const PhaseTable& phase,
                      std::span<Complex> out, FrftWorkspace& ws) {
  const int n = phase.n();
  if (plan.size() != box.s || plan.n() != n || f.size() != static_cast<std::size_t>(n)) {
    throw InvalidArgument("box_contribution: plan, box and field sizes disagree");
  }
  if (box.x0 < 0 || box.k0 < 0 || box.x0 + box.s > n || box.k0 + box.s > n) {
    throw InvalidArgument("box_contribution: box outside [0,N)^2");
  }
  if (out.size() != static_cast<std::size_t>(box.s)) throw InvalidArgument("box_contribution: output length != s");

  const auto s = static_cast<std::size_t>(box.s);
  const std::int64_t x0 = box.x0;
  const std::int64_t k0 = box.k0;

  // M3: e^{2 pi i x0 (k0 + k') / N}
  std::span<Complex> staged = ws.staging(s);
  for (std::size_t k = 0; k < s; ++k) {
    const std::int64_t kk = k0 + static_cast<std::int64_t>(k);
    staged[k] = phase(x0 * kk) * f[static_cast<std::size_t>(kk)];
  }
  plan.apply(staged, out, ws);
  // M1: e^{2 pi i x' k0 / N}
  if (k0 != 0) {
    for (std::size_t x = 0; x < s; ++x) out[x] *= phase(static_cast<std::int64_t>(x) * k0);
  }
}

std::vector<Complex> box_contribution(const Box1D& box, std::span<const Complex> f, const FrftPlan& plan) {
  const PhaseTable phase(plan.n());
  FrftWorkspace ws;
  std::vector<Complex> out(static_cast<std::size_t>(box.s));
  box_contribution(box, f, plan, phase, out, ws);
  return out;
}

Field1D pft1d_apply(const Field1D& f, const SampledCutoff1D& c, const Pft1dOptions& options) {
  if (f.n() != c.n()) throw InvalidArgument("pft1d_apply: field and cutoff sizes differ");
  return pft1d_apply(f, decompose_1d(c), options);
}

Field1D pft1d_apply(const Field1D& f, const Decomposition1D& d, const Pft1dOptions& options) {
  if (f.n() != d.n) throw InvalidArgument("pft1d_apply: field and decomposition sizes differ");
  const int n = f.n();
  const PhaseTable phase(n);
  Field1D u(n);
  [[maybe_unused]] const int workers = resolve_threads(options.threads);
  std::vector<Complex> level_out;

  // Sizes ascend; within a size, boxes are in (x0, k0) order. Each box writes
  // a private slot, and the reduction into u runs serially in that order, so
  // the result does not depend on the worker count.
  for (const auto& [s, boxes] : d.boxes_by_size) {
    const FrftPlan plan(s, n, options.frft_direct_threshold);
    const auto us = static_cast<std::size_t>(s);
    level_out.assign(boxes.size() * us, Complex{});
    const auto count = static_cast<std::ptrdiff_t>(boxes.size());
    const std::span<const Complex> fv = f.values();

#pragma omp parallel num_threads(workers)
    {
      FrftWorkspace ws;
#pragma omp for schedule(dynamic, 4)
      for (std::ptrdiff_t b = 0; b < count; ++b) {
        const auto ub = static_cast<std::size_t>(b);
        box_contribution(boxes[ub], fv, plan, phase, std::span<Complex>(level_out).subspan(ub * us, us), ws);
      }
    }

    for (std::size_t b = 0; b < boxes.size(); ++b) {
      const Complex* v = level_out.data() + b * us;
      const int x0 = boxes[b].x0;
      for (std::size_t x = 0; x < us; ++x) u[x0 + static_cast<int>(x)] += v[x];
    }
  }
  return u;
}

}  // namespace pft
