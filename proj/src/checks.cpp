#include "pft/checks.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "pft/decomp.hpp"
#include "pft/frft.hpp"
#include "pft/oracle.hpp"
#include "pft/pft1d.hpp"
#include "pft/pft2d.hpp"

namespace pft {

namespace {

bool partitions_1d(const SampledCutoff1D& c) {
  const int n = c.n();
  const Decomposition1D d = decompose_1d(c);
  std::vector<int> cover(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  for (const Box1D& b : d.all_boxes()) {
    for (int x = b.x0; x < b.x0 + b.s; ++x) {
      for (int k = b.k0; k < b.k0 + b.s; ++k) ++cover[static_cast<std::size_t>(x) * n + static_cast<std::size_t>(k)];
    }
  }
  for (int x = 0; x < n; ++x) {
    for (int k = 0; k < n; ++k) {
      if (cover[static_cast<std::size_t>(x) * n + static_cast<std::size_t>(k)] != (k < c[x] ? 1 : 0)) return false;
    }
  }
  return d.cell_count() == c.total();
}

bool partitions_2d(const SampledCutoff2D& c) {
  const Decomposition2D d = decompose_2d(c);
  if (d.cell_count() != c.total()) return false;
  std::size_t grouped = 0;
  for (const RingGroup& g : group_boxes_by_interval(d)) grouped += g.boxes.size();
  return grouped == d.box_count();
}

double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

bool run_checks(std::ostream& out, int threads) {
  bool all = true;
  auto report = [&](const std::string& name, bool ok) {
    out << (ok ? "ok   " : "FAIL ") << name << '\n';
    all = all && ok;
  };

  for (const std::string& name : builtin_profile_names_1d()) {
    const CutoffProfile1D profile = profile1d_by_name(name);
    bool part = true;
    for (int n : {8, 64, 256}) part = part && partitions_1d(sample_cutoff_1d(profile, n));
    report("partition-1d " + name, part);

    const SampledCutoff1D c = sample_cutoff_1d(profile, 512);
    const Field1D f(random_complex(512, 11));
    const auto err = relative_error(direct_pft_1d(f, c, threads).values(), pft1d_apply(f, c, {threads}).values());
    report("pft1d-exact " + name, !err || *err <= 1e-10);
  }

  for (const std::string& name : builtin_profile_names_2d()) {
    const CutoffProfile2D profile = profile2d_by_name(name);
    bool part = true;
    for (int n : {8, 32, 64}) part = part && partitions_2d(sample_cutoff_2d(profile, n));
    report("partition-2d " + name, part);

    const SampledCutoff2D c = sample_cutoff_2d(profile, 16);
    const Field2D f(16, random_complex(256, 13));
    const Pft2dOptions options{GridSpec(5), GroupEvaluator::Direct, threads};
    const auto err = relative_error(direct_pft_2d(f, c, threads).values(), pft2d_apply(f, c, options).values());
    report("pft2d-grouping " + name, !err || *err <= 1e-12);
  }

  bool frft_ok = true;
  for (int n : {16, 128}) {
    for (int s = 1; s <= n; s *= 2) {
      const auto in = random_complex(static_cast<std::size_t>(s), 17);
      std::vector<Complex> dense(static_cast<std::size_t>(s));
      const PhaseTable phase(n);
      for (int x = 0; x < s; ++x) {
        for (int k = 0; k < s; ++k) dense[static_cast<std::size_t>(x)] += phase(static_cast<std::int64_t>(x) * k) * in[static_cast<std::size_t>(k)];
      }
      const auto fast = FrftPlan(s, n, 0).apply(in);
      frft_ok = frft_ok && max_abs_diff(dense, fast) <= 1e-12 * std::max(1, s);
    }
  }
  report("frft-dense", frft_ok);
  return all;
}

}  // namespace pft
