#pragma once

// Exact 1D partial Fourier transform
//   u_x = sum_{k < c_x} e^{2 pi i x k / N} f_k
// in O(N log^2 N): decompose D into dyadic boxes, then evaluate each box's
// block M = M1 * M2 * M3 with diagonal M1, M3 and the fractional Fourier
// matrix M2 = [e^{2 pi i x'k'/N}].

#include <span>
#include <vector>

#include "pft/cutoff.hpp"
#include "pft/decomp.hpp"
#include "pft/frft.hpp"

namespace pft {

struct Pft1dOptions {
  int threads = 0;  // 0: OpenMP default
  int frft_direct_threshold = kDefaultFrftDirectThreshold;
};

/// v_{x'} = sum_{k'<s} e^{2 pi i (x0+x')(k0+k')/N} f_{k0+k'} for x' in [0, s).
/// `phase` must be the size-N table.
void box_contribution(const Box1D& box, std::span<const Complex> f, const FrftPlan& plan, const PhaseTable& phase,
                      std::span<Complex> out, FrftWorkspace& ws);
std::vector<Complex> box_contribution(const Box1D& box, std::span<const Complex> f, const FrftPlan& plan);

Field1D pft1d_apply(const Field1D& f, const SampledCutoff1D& c, const Pft1dOptions& options = {});

/// Same, reusing an existing decomposition of c.
Field1D pft1d_apply(const Field1D& f, const Decomposition1D& d, const Pft1dOptions& options = {});

}  // namespace pft
