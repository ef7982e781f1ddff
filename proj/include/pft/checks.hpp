#pragma once

#include <iosfwd>

namespace pft {

/// Self-check of the structural invariants on small sizes: decomposition
/// partitions, 1D exactness, exact 2D grouping and frft against the dense sum.
/// Writes one "ok"/"FAIL" line per check and returns true when all pass.
bool run_checks(std::ostream& out, int threads = 0);

}  // namespace pft
