#include "pft/butterfly.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "pft/oracle.hpp"

namespace pft {

GridSpec::GridSpec(int p, NodeFamily family) : p_(p), family_(family), nodes_(static_cast<std::size_t>(p)) {
  if (p < 2) throw InvalidArgument("GridSpec: p must be at least 2");
  for (int m = 0; m < p; ++m) {
    nodes_[static_cast<std::size_t>(m)] =
        family == NodeFamily::Uniform
            ? static_cast<double>(m) / (p - 1)
            : 0.5 * (1.0 - std::cos((2.0 * m + 1.0) * (kTwoPi / 2.0) / (2.0 * p)));
  }
}

double GridSpec::lagrange(int m, double nu) const {
  const double nm = nodes_[static_cast<std::size_t>(m)];
  double v = 1.0;
  for (int j = 0; j < p_; ++j) {
    if (j == m) continue;
    const double nj = nodes_[static_cast<std::size_t>(j)];
    v *= (nu - nj) / (nm - nj);
  }
  return v;
}

QuadTree QuadTree::build(const PointSet& points) {
  QuadTree tree;
  if (points.empty()) throw InvalidArgument("QuadTree: empty point set");
  int lo1 = points[0].x1, hi1 = points[0].x1, lo2 = points[0].x2, hi2 = points[0].x2;
  for (const Point& p : points) {
    lo1 = std::min(lo1, p.x1);
    hi1 = std::max(hi1, p.x1);
    lo2 = std::min(lo2, p.x2);
    hi2 = std::max(hi2, p.x2);
  }
  tree.origin = {lo1, lo2};
  const int extent = std::max(hi1 - lo1, hi2 - lo2) + 1;
  while (tree.size < extent) tree.size *= 2;
  const int depth = log2_exact(tree.size);
  tree.levels.resize(static_cast<std::size_t>(depth) + 1);

  QuadLevel& leaf = tree.levels.back();
  leaf.width = 1;
  leaf.boxes.reserve(points.size());
  for (const Point& p : points) leaf.boxes.push_back({p.x1 - lo1, p.x2 - lo2});

  for (int d = depth - 1; d >= 0; --d) {
    QuadLevel& child = tree.levels[static_cast<std::size_t>(d) + 1];
    QuadLevel& level = tree.levels[static_cast<std::size_t>(d)];
    level.width = tree.size >> d;
    level.boxes.reserve(child.boxes.size());
    for (const Point& c : child.boxes) level.boxes.push_back({c.x1 >> 1, c.x2 >> 1});
    std::sort(level.boxes.begin(), level.boxes.end());
    level.boxes.erase(std::unique(level.boxes.begin(), level.boxes.end()), level.boxes.end());

    child.parent.resize(child.boxes.size());
    std::vector<int> counts(level.boxes.size() + 1, 0);
    for (std::size_t i = 0; i < child.boxes.size(); ++i) {
      const Point up{child.boxes[i].x1 >> 1, child.boxes[i].x2 >> 1};
      const auto it = std::lower_bound(level.boxes.begin(), level.boxes.end(), up);
      const auto pi = static_cast<int>(it - level.boxes.begin());
      child.parent[i] = pi;
      ++counts[static_cast<std::size_t>(pi) + 1];
    }
    for (std::size_t i = 0; i < level.boxes.size(); ++i) counts[i + 1] += counts[i];
    level.child_begin = counts;
    level.children.resize(child.boxes.size());
    std::vector<int> fill(level.child_begin.begin(), level.child_begin.end() - 1);
    for (std::size_t i = 0; i < child.boxes.size(); ++i) {
      level.children[static_cast<std::size_t>(fill[static_cast<std::size_t>(child.parent[i])]++)] =
          static_cast<int>(i);
    }
  }
  return tree;
}

ButterflyPlan::ButterflyPlan(PointSet targets, PointSet sources, GridSpec grid, bool allow_direct)
    : n_(targets.n()),
      steps_(0),
      grid_(std::move(grid)),
      targets_(std::move(targets)),
      sources_(std::move(sources)),
      direct_(false) {
  if (targets_.empty() || sources_.empty()) throw InvalidArgument("plan_butterfly: point sets must be nonempty");
  if (sources_.n() != n_) throw InvalidArgument("plan_butterfly: point sets live on different grids");
  if (n_ < 2) throw InvalidArgument("plan_butterfly: n must be at least 2");
  require_power_of_two(n_, "butterfly grid size");
  target_tree_ = QuadTree::build(targets_);
  source_tree_ = QuadTree::build(sources_);
  const int lx = log2_exact(target_tree_.size);
  const int lk = log2_exact(source_tree_.size);
  steps_ = std::max(0, lx + lk - log2_exact(n_));
  direct_ = allow_direct && std::min(targets_.size(), sources_.size()) < direct_fallback_threshold(grid_);
}

std::size_t ButterflyPlan::pair_count(int step) const {
  if (step < 0 || step > steps_) throw InvalidArgument("pair_count: step out of range");
  return target_tree_.levels[static_cast<std::size_t>(step)].boxes.size() *
         source_tree_.levels[static_cast<std::size_t>(steps_ - step)].boxes.size();
}

std::size_t ButterflyPlan::total_pairs() const {
  std::size_t total = 0;
  for (int l = 0; l <= steps_; ++l) total += pair_count(l);
  return total;
}

Complex kernel_phase(Point x, Point k, int n) {
  const std::int64_t m = static_cast<std::int64_t>(x.x1) * k.x1 + static_cast<std::int64_t>(x.x2) * k.x2;
  const std::int64_t r = ((m % n) + n) % n;
  return cis_cycles(static_cast<double>(r) / n);
}

namespace {

using Pair2 = std::array<double, 2>;

// Expansion coefficients are p x p, row-major over (dim-1 node, dim-2 node).
//
// Tree-local box b of width w holds the lattice points o + b w .. o + b w + w - 1
// (o the tree origin); its grid nodes are o + b w + (w - 1) nu_m and its
// centre o + b w + (w - 1) / 2. Widths of paired boxes multiply to N (A with
// B) or N/2 (A with a child of B), so each centre-to-node phase splits into
// (-1)^{index product}, a per-box row over the nodes and a per-box scalar.
class Sweep {
 public:
  Sweep(const ButterflyPlan& plan, int threads)
      : plan_(plan),
        n_(plan.n()),
        p_(plan.grid().p()),
        pp_(static_cast<std::size_t>(p_) * static_cast<std::size_t>(p_)),
        nodes_(plan.grid().nodes()),
        xo_{static_cast<double>(plan.target_tree().origin.x1), static_cast<double>(plan.target_tree().origin.x2)},
        ko_{static_cast<double>(plan.source_tree().origin.x1), static_cast<double>(plan.source_tree().origin.x2)},
        workers_(resolve_threads(threads)) {}

  std::vector<Complex> run(std::span<const Complex> f) {
    const int steps = plan_.steps();
    const int mid = plan_.switch_level();
    std::vector<Complex> cur = initialize(f);
    for (int step = 1; step <= mid; ++step) cur = source_step(step, cur);
    cur = switch_representation(mid, std::move(cur));
    for (int step = mid + 1; step <= steps; ++step) cur = target_step(step, cur);
    return evaluate(cur);
  }

 private:
  struct Transfer {
    std::array<std::vector<double>, 2> t;  // t[h][m * p + m']
  };

  std::size_t idx(int a, int b) const {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(p_) + static_cast<std::size_t>(b);
  }

  const QuadLevel& xlevel(int depth) const { return plan_.target_tree().levels[static_cast<std::size_t>(depth)]; }
  const QuadLevel& klevel(int depth) const { return plan_.source_tree().levels[static_cast<std::size_t>(depth)]; }

  double nu(int m) const { return nodes_[static_cast<std::size_t>(m)]; }

  Complex cis(double num) const { return cis_cycles(num / n_); }

  static int coord(Point b, int d) { return d == 0 ? b.x1 : b.x2; }

  // Lagrange weights of every node at unit coordinate t.
  void weights(double t, double* out) const {
    for (int m = 0; m < p_; ++m) out[m] = plan_.grid().lagrange(m, t);
  }

  // Unit coordinate of local lattice offset r inside a box of width w.
  static double unit(int r, int w) { return w == 1 ? 0.0 : static_cast<double>(r) / (w - 1); }

  // L_m at the position of child node m' (child half h of width wc) inside
  // the parent's node span.
  Transfer transfer(int wc) const {
    Transfer tr;
    const double span = 2.0 * wc - 1.0;
    for (int h = 0; h < 2; ++h) {
      tr.t[h].resize(pp_);
      for (int m = 0; m < p_; ++m) {
        for (int mc = 0; mc < p_; ++mc) {
          tr.t[h][idx(m, mc)] = plan_.grid().lagrange(m, (h * wc + (wc - 1) * nu(mc)) / span);
        }
      }
    }
    return tr;
  }

  // Per box: outer product over the two coordinates of
  //   row_d[m] = e^{2 pi i (b_d w + offset_d)(node_offset_d + span nu_m) / N},
  // conjugated if asked.
  std::vector<Complex> row_tables(const QuadLevel& level, Pair2 offset, Pair2 node_offset, double span,
                                  bool conj) const {
    std::vector<Complex> out(level.boxes.size() * pp_);
    std::array<std::vector<Complex>, 2> r{std::vector<Complex>(static_cast<std::size_t>(p_)),
                                          std::vector<Complex>(static_cast<std::size_t>(p_))};
    for (std::size_t b = 0; b < level.boxes.size(); ++b) {
      for (int d = 0; d < 2; ++d) {
        const double u = static_cast<double>(coord(level.boxes[b], d)) * level.width + offset[d];
        for (int m = 0; m < p_; ++m) {
          const Complex z = cis(u * (node_offset[d] + span * nu(m)));
          r[d][static_cast<std::size_t>(m)] = conj ? std::conj(z) : z;
        }
      }
      Complex* dst = out.data() + b * pp_;
      for (int i = 0; i < p_; ++i) {
        for (int j = 0; j < p_; ++j) dst[idx(i, j)] = r[0][static_cast<std::size_t>(i)] * r[1][static_cast<std::size_t>(j)];
      }
    }
    return out;
  }

  // Per box: e^{2 pi i sum_d b_d w offset_d / N}, conjugated if asked.
  std::vector<Complex> scalar_table(const QuadLevel& level, Pair2 offset, bool conj) const {
    std::vector<Complex> out(level.boxes.size());
    const double w = level.width;
    for (std::size_t b = 0; b < level.boxes.size(); ++b) {
      const Complex z = cis(level.boxes[b].x1 * w * offset[0]) * cis(level.boxes[b].x2 * w * offset[1]);
      out[b] = conj ? std::conj(z) : z;
    }
    return out;
  }

  static double parity_sign(Point a, Point c) { return ((a.x1 & c.x1 & 1) ^ (a.x2 & c.x2 & 1)) ? -1.0 : 1.0; }

  // For every leaf of `tree`, the index of its ancestor at `depth`.
  static std::vector<int> ancestors(const QuadTree& tree, int depth) {
    const auto leaf_depth = static_cast<int>(tree.levels.size()) - 1;
    std::vector<int> anc(tree.levels.back().boxes.size());
    for (std::size_t i = 0; i < anc.size(); ++i) anc[i] = static_cast<int>(i);
    for (int d = leaf_depth; d > depth; --d) {
      const auto& parent = tree.levels[static_cast<std::size_t>(d)].parent;
      for (int& a : anc) a = parent[static_cast<std::size_t>(a)];
    }
    return anc;
  }

  // Step 0: A is the target root; equivalent sources of each B at source
  // depth S are interpolated straight from its points.
  std::vector<Complex> initialize(std::span<const Complex> f) const {
    const QuadTree& kt = plan_.source_tree();
    const int depth = plan_.steps();
    const QuadLevel& kb = klevel(depth);
    const int wb = kb.width;
    const double half = 0.5 * (plan_.target_tree().size - 1);
    const Pair2 centre{xo_[0] + half, xo_[1] + half};
    const std::vector<int> anc = ancestors(kt, depth);
    const QuadLevel& leaves = kt.levels.back();

    std::vector<Complex> out(kb.boxes.size() * pp_);
    std::vector<double> w1(static_cast<std::size_t>(p_));
    std::vector<double> w2(static_cast<std::size_t>(p_));
    for (std::size_t i = 0; i < leaves.boxes.size(); ++i) {
      const Point k = leaves.boxes[i];
      const auto b = static_cast<std::size_t>(anc[i]);
      const Point box = kb.boxes[b];
      weights(unit(k.x1 - box.x1 * wb, wb), w1.data());
      weights(unit(k.x2 - box.x2 * wb, wb), w2.data());
      const Complex v = f[i] * cis(centre[0] * (ko_[0] + k.x1) + centre[1] * (ko_[1] + k.x2));
      Complex* dst = out.data() + b * pp_;
      for (int t1 = 0; t1 < p_; ++t1) {
        const Complex v1 = v * w1[static_cast<std::size_t>(t1)];
        for (int t2 = 0; t2 < p_; ++t2) dst[idx(t1, t2)] += v1 * w2[static_cast<std::size_t>(t2)];
      }
    }
    // e^{-2 pi i c_A . k_t / N} with k_t = o + b w + (w - 1) nu_t
    std::array<std::vector<Complex>, 2> node_rows;
    for (std::size_t b = 0; b < kb.boxes.size(); ++b) {
      Complex* dst = out.data() + b * pp_;
      for (int d = 0; d < 2; ++d) {
        node_rows[d].resize(static_cast<std::size_t>(p_));
        const double base = ko_[d] + static_cast<double>(coord(kb.boxes[b], d)) * wb;
        for (int m = 0; m < p_; ++m) {
          node_rows[d][static_cast<std::size_t>(m)] = std::conj(cis(centre[d] * (base + (wb - 1) * nu(m))));
        }
      }
      for (int t1 = 0; t1 < p_; ++t1) {
        for (int t2 = 0; t2 < p_; ++t2) {
          dst[idx(t1, t2)] *= node_rows[0][static_cast<std::size_t>(t1)] * node_rows[1][static_cast<std::size_t>(t2)];
        }
      }
    }
    return out;
  }

  // First half: equivalent sources of (A, B) from those of (parent(A), children(B)).
  std::vector<Complex> source_step(int step, const std::vector<Complex>& prev) const {
    const int depth = plan_.steps();
    const QuadLevel& xa = xlevel(step);
    const QuadLevel& kb = klevel(depth - step);
    const QuadLevel& kc = klevel(depth - step + 1);
    const std::size_t nb = kb.boxes.size();
    const std::size_t nb_prev = kc.boxes.size();
    const double half_a = 0.5 * (xa.width - 1);
    const Pair2 centre{xo_[0] + half_a, xo_[1] + half_a};
    const Transfer tr = transfer(kc.width);
    const std::vector<Complex> in_rows = row_tables(xa, centre, ko_, kc.width - 1, false);
    const std::vector<Complex> out_rows = row_tables(xa, centre, ko_, kb.width - 1, true);
    const std::vector<Complex> child_scalar = scalar_table(kc, centre, false);
    const std::vector<Complex> box_scalar = scalar_table(kb, centre, true);
    std::vector<Complex> out(xa.boxes.size() * nb * pp_);
    const auto pairs = static_cast<std::ptrdiff_t>(xa.boxes.size() * nb);

#pragma omp parallel num_threads(workers_)
    {
      std::vector<Complex> tmp(pp_);
      std::vector<Complex> half(pp_);
      std::vector<Complex> acc(pp_);
#pragma omp for schedule(static)
      for (std::ptrdiff_t pair = 0; pair < pairs; ++pair) {
        const std::size_t a = static_cast<std::size_t>(pair) / nb;
        const std::size_t b = static_cast<std::size_t>(pair) % nb;
        const Point abox = xa.boxes[a];
        const auto ap = static_cast<std::size_t>(xa.parent[a]);
        const Complex* ein = in_rows.data() + a * pp_;
        std::fill(acc.begin(), acc.end(), Complex{});

        for (int ci = kb.child_begin[b]; ci < kb.child_begin[b + 1]; ++ci) {
          const auto c = static_cast<std::size_t>(kb.children[static_cast<std::size_t>(ci)]);
          const Point cbox = kc.boxes[c];
          const Complex scale = parity_sign(abox, cbox) * child_scalar[c];
          const Complex* src = prev.data() + (ap * nb_prev + c) * pp_;
          for (std::size_t t = 0; t < pp_; ++t) tmp[t] = scale * src[t] * ein[t];
          // acc += T_h1 * tmp * T_h2^T
          const double* t1 = tr.t[cbox.x1 & 1].data();
          const double* t2 = tr.t[cbox.x2 & 1].data();
          for (int i = 0; i < p_; ++i) {
            for (int m2 = 0; m2 < p_; ++m2) {
              Complex s{};
              for (int j = 0; j < p_; ++j) s += tmp[idx(i, j)] * t2[idx(m2, j)];
              half[idx(i, m2)] = s;
            }
          }
          for (int m1 = 0; m1 < p_; ++m1) {
            for (int i = 0; i < p_; ++i) {
              const double w = t1[idx(m1, i)];
              for (int m2 = 0; m2 < p_; ++m2) acc[idx(m1, m2)] += w * half[idx(i, m2)];
            }
          }
        }

        const Complex* eout = out_rows.data() + a * pp_;
        const Complex scale = box_scalar[b];
        Complex* dst = out.data() + static_cast<std::size_t>(pair) * pp_;
        for (std::size_t t = 0; t < pp_; ++t) dst[t] = scale * acc[t] * eout[t];
      }
    }
    return out;
  }

  // Equivalent sources on B's grid -> field values on A's grid:
  // beta = E1 * delta * E2^T with E_d(s,t) = e^{2 pi i x_s k_t / N}.
  std::vector<Complex> switch_representation(int step, std::vector<Complex> delta) const {
    const QuadLevel& xa = xlevel(step);
    const QuadLevel& kb = klevel(plan_.steps() - step);
    const std::size_t nb = kb.boxes.size();
    const auto pairs = static_cast<std::ptrdiff_t>(xa.boxes.size() * nb);
    const double span_a = xa.width - 1;
    const double span_b = kb.width - 1;
    const auto pz = static_cast<std::size_t>(p_);

    // rows[box][d][m] = e^{2 pi i b_d w (origin_d + span nu_m) / N}
    auto rows = [&](const QuadLevel& level, Pair2 origin, double span) {
      std::vector<Complex> r(level.boxes.size() * 2 * pz);
      for (std::size_t i = 0; i < level.boxes.size(); ++i) {
        for (int d = 0; d < 2; ++d) {
          const double u = static_cast<double>(coord(level.boxes[i], d)) * level.width;
          for (int m = 0; m < p_; ++m) {
            r[(2 * i + static_cast<std::size_t>(d)) * pz + static_cast<std::size_t>(m)] =
                cis(u * (origin[d] + span * nu(m)));
          }
        }
      }
      return r;
    };
    const std::vector<Complex> arow = rows(xa, ko_, span_b);
    const std::vector<Complex> brow = rows(kb, xo_, span_a);
    std::array<std::vector<Complex>, 2> node_product;
    for (int d = 0; d < 2; ++d) {
      node_product[d].resize(pp_);
      for (int s = 0; s < p_; ++s) {
        for (int t = 0; t < p_; ++t) {
          node_product[d][idx(s, t)] = cis((xo_[d] + span_a * nu(s)) * (ko_[d] + span_b * nu(t)));
        }
      }
    }

#pragma omp parallel num_threads(workers_)
    {
      std::vector<Complex> e1(pp_);
      std::vector<Complex> e2(pp_);
      std::vector<Complex> half(pp_);
#pragma omp for schedule(static)
      for (std::ptrdiff_t pair = 0; pair < pairs; ++pair) {
        const std::size_t a = static_cast<std::size_t>(pair) / nb;
        const std::size_t b = static_cast<std::size_t>(pair) % nb;
        const Complex* a1 = arow.data() + 2 * a * pz;
        const Complex* a2 = a1 + pz;
        const Complex* b1 = brow.data() + 2 * b * pz;
        const Complex* b2 = b1 + pz;
        for (int s = 0; s < p_; ++s) {
          for (int t = 0; t < p_; ++t) {
            e1[idx(s, t)] = a1[t] * b1[s] * node_product[0][idx(s, t)];
            e2[idx(s, t)] = a2[t] * b2[s] * node_product[1][idx(s, t)];
          }
        }
        Complex* d = delta.data() + static_cast<std::size_t>(pair) * pp_;
        for (int t1 = 0; t1 < p_; ++t1) {
          for (int s2 = 0; s2 < p_; ++s2) {
            Complex acc{};
            for (int t2 = 0; t2 < p_; ++t2) acc += d[idx(t1, t2)] * e2[idx(s2, t2)];
            half[idx(t1, s2)] = acc;
          }
        }
        for (int s1 = 0; s1 < p_; ++s1) {
          for (int s2 = 0; s2 < p_; ++s2) d[idx(s1, s2)] = Complex{};
          for (int t1 = 0; t1 < p_; ++t1) {
            const Complex w = e1[idx(s1, t1)];
            for (int s2 = 0; s2 < p_; ++s2) d[idx(s1, s2)] += w * half[idx(t1, s2)];
          }
        }
      }
    }
    return delta;
  }

  // Second half: values on A's grid for B from values on parent(A)'s grid
  // for each child of B.
  std::vector<Complex> target_step(int step, const std::vector<Complex>& prev) const {
    const int depth = plan_.steps();
    const QuadLevel& xa = xlevel(step);
    const QuadLevel& xp = xlevel(step - 1);
    const QuadLevel& kb = klevel(depth - step);
    const QuadLevel& kc = klevel(depth - step + 1);
    const std::size_t nb = kb.boxes.size();
    const std::size_t nb_prev = kc.boxes.size();
    const double half_c = 0.5 * (kc.width - 1);
    const Pair2 centre{ko_[0] + half_c, ko_[1] + half_c};
    const Transfer tr = transfer(xa.width);
    const std::vector<Complex> in_rows = row_tables(kc, centre, xo_, xp.width - 1, true);
    const std::vector<Complex> out_rows = row_tables(kc, centre, xo_, xa.width - 1, false);
    const std::vector<Complex> parent_scalar = scalar_table(xp, centre, true);
    const std::vector<Complex> box_scalar = scalar_table(xa, centre, false);
    std::vector<Complex> out(xa.boxes.size() * nb * pp_);
    const auto pairs = static_cast<std::ptrdiff_t>(xa.boxes.size() * nb);

#pragma omp parallel num_threads(workers_)
    {
      std::vector<Complex> tmp(pp_);
      std::vector<Complex> half(pp_);
#pragma omp for schedule(static)
      for (std::ptrdiff_t pair = 0; pair < pairs; ++pair) {
        const std::size_t a = static_cast<std::size_t>(pair) / nb;
        const std::size_t b = static_cast<std::size_t>(pair) % nb;
        const Point abox = xa.boxes[a];
        const auto ap = static_cast<std::size_t>(xa.parent[a]);
        const double* t1 = tr.t[abox.x1 & 1].data();
        const double* t2 = tr.t[abox.x2 & 1].data();
        const Complex in_scale = parent_scalar[ap];
        Complex* dst = out.data() + static_cast<std::size_t>(pair) * pp_;
        std::fill(dst, dst + pp_, Complex{});

        for (int ci = kb.child_begin[b]; ci < kb.child_begin[b + 1]; ++ci) {
          const auto c = static_cast<std::size_t>(kb.children[static_cast<std::size_t>(ci)]);
          const Point cbox = kc.boxes[c];
          const Complex* src = prev.data() + (ap * nb_prev + c) * pp_;
          const Complex* ein = in_rows.data() + c * pp_;
          const Complex* eout = out_rows.data() + c * pp_;
          for (std::size_t t = 0; t < pp_; ++t) tmp[t] = src[t] * ein[t];
          // val[s1][s2] = sum_{i,j} T_h1[i][s1] T_h2[j][s2] tmp[i][j]
          for (int i = 0; i < p_; ++i) {
            for (int s2 = 0; s2 < p_; ++s2) half[idx(i, s2)] = Complex{};
            for (int j = 0; j < p_; ++j) {
              const Complex v = tmp[idx(i, j)];
              for (int s2 = 0; s2 < p_; ++s2) half[idx(i, s2)] += v * t2[idx(j, s2)];
            }
          }
          for (int s1 = 0; s1 < p_; ++s1) {
            for (int s2 = 0; s2 < p_; ++s2) tmp[idx(s1, s2)] = Complex{};
            for (int i = 0; i < p_; ++i) {
              const double w = t1[idx(i, s1)];
              for (int s2 = 0; s2 < p_; ++s2) tmp[idx(s1, s2)] += w * half[idx(i, s2)];
            }
          }
          const Complex scale = parity_sign(abox, cbox) * in_scale;
          for (std::size_t t = 0; t < pp_; ++t) dst[t] += scale * tmp[t] * eout[t];
        }
        const Complex out_scale = box_scalar[a];
        for (std::size_t t = 0; t < pp_; ++t) dst[t] *= out_scale;
      }
    }
    return out;
  }

  // Step S: B is the source root; values at each target point are
  // interpolated from the grid of its box A at target depth S.
  std::vector<Complex> evaluate(const std::vector<Complex>& beta) const {
    const QuadTree& xt = plan_.target_tree();
    const int depth = plan_.steps();
    const QuadLevel& xa = xlevel(depth);
    const int wa = xa.width;
    const double half = 0.5 * (plan_.source_tree().size - 1);
    const Pair2 centre{ko_[0] + half, ko_[1] + half};

    // pre = beta * e^{-2 pi i x_s . c_B / N}
    std::vector<Complex> pre(beta.size());
    std::array<std::vector<Complex>, 2> node_rows{std::vector<Complex>(static_cast<std::size_t>(p_)),
                                                  std::vector<Complex>(static_cast<std::size_t>(p_))};
    for (std::size_t a = 0; a < xa.boxes.size(); ++a) {
      for (int d = 0; d < 2; ++d) {
        const double base = xo_[d] + static_cast<double>(coord(xa.boxes[a], d)) * wa;
        for (int m = 0; m < p_; ++m) {
          node_rows[d][static_cast<std::size_t>(m)] = std::conj(cis(centre[d] * (base + (wa - 1) * nu(m))));
        }
      }
      for (int s1 = 0; s1 < p_; ++s1) {
        for (int s2 = 0; s2 < p_; ++s2) {
          pre[a * pp_ + idx(s1, s2)] = beta[a * pp_ + idx(s1, s2)] * node_rows[0][static_cast<std::size_t>(s1)] *
                                       node_rows[1][static_cast<std::size_t>(s2)];
        }
      }
    }

    const std::vector<int> anc = ancestors(xt, depth);
    const QuadLevel& leaves = xt.levels.back();
    std::vector<Complex> u(leaves.boxes.size());
    std::vector<double> w1(static_cast<std::size_t>(p_));
    std::vector<double> w2(static_cast<std::size_t>(p_));
    for (std::size_t i = 0; i < leaves.boxes.size(); ++i) {
      const Point x = leaves.boxes[i];
      const auto a = static_cast<std::size_t>(anc[i]);
      const Point box = xa.boxes[a];
      weights(unit(x.x1 - box.x1 * wa, wa), w1.data());
      weights(unit(x.x2 - box.x2 * wa, wa), w2.data());
      const Complex* v = pre.data() + a * pp_;
      Complex acc{};
      for (int s1 = 0; s1 < p_; ++s1) {
        Complex row{};
        for (int s2 = 0; s2 < p_; ++s2) row += w2[static_cast<std::size_t>(s2)] * v[idx(s1, s2)];
        acc += w1[static_cast<std::size_t>(s1)] * row;
      }
      u[i] = acc * cis(centre[0] * (xo_[0] + x.x1) + centre[1] * (xo_[1] + x.x2));
    }
    return u;
  }

  const ButterflyPlan& plan_;
  int n_;
  int p_;
  std::size_t pp_;
  const std::vector<double>& nodes_;
  Pair2 xo_;
  Pair2 ko_;
  int workers_;
};

}  // namespace

std::vector<Complex> butterfly_apply(const ButterflyPlan& plan, std::span<const Complex> f, int threads) {
  if (f.size() != plan.sources().size()) throw InvalidArgument("butterfly_apply: f is not aligned with the sources");
  if (plan.direct()) return direct_sparse_sum(plan.targets(), plan.sources(), f, threads);
  Sweep sweep(plan, threads);
  return sweep.run(f);
}

}  // namespace pft
