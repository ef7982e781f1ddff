#include "pft/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "pft/fft.hpp"
#include "pft/oracle.hpp"
#include "pft/pft1d.hpp"
#include "pft/pft2d.hpp"

namespace pft {

namespace {

bool is_builtin(const std::string& spec, const std::vector<std::string>& names) {
  const std::string name = spec.substr(0, spec.find(':'));
  return std::find(names.begin(), names.end(), name) != names.end();
}

void require_velocity_scales(const BenchConfig& cfg) {
  if (!(cfg.omega > 0.0) || !(cfg.kappa > 0.0)) {
    throw UsageError("velocity file profiles need --omega and --kappa > 0");
  }
  if (!std::filesystem::exists(cfg.profile)) {
    throw UsageError("profile '" + cfg.profile + "' is neither a built-in name nor an existing file");
  }
}

// Seconds per execution of an FFT plan; loops so that short transforms are
// measured over at least a few milliseconds.
double fft_seconds(const FftPlan& plan, int repetitions) {
  AlignedBuffer buf(plan.size());
  const auto seed = random_complex(plan.size(), 7);
  std::copy(seed.begin(), seed.end(), buf.data());
  int batch = 1;
  while (time_once([&] {
           for (int i = 0; i < batch; ++i) plan.execute(buf);
         }) < 2e-3 &&
         batch < (1 << 20)) {
    batch *= 2;
  }
  const double total = median_seconds(
      [&] {
        for (int i = 0; i < batch; ++i) plan.execute(buf);
      },
      repetitions);
  return total / batch;
}

std::vector<int> sorted_sizes(const BenchConfig& cfg) {
  std::vector<int> sizes = cfg.sizes;
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  return sizes;
}

std::string format_error(const std::optional<double>& e) { return e ? format_sci(*e) : std::string("undefined"); }

std::vector<std::string> csv_header(int dimension) {
  if (dimension == 1) return {"N", "T_a", "R_da", "R_af", "E", "boxes", "extrapolated"};
  return {"N", "p", "T_a", "R_da", "R_af", "E_a", "groups", "extrapolated"};
}

std::vector<std::string> row_cells(const BenchRow& r, int dimension) {
  std::vector<std::string> cells{std::to_string(r.n)};
  if (dimension == 2) cells.push_back(std::to_string(r.p));
  cells.push_back(format_sci(r.t_algo));
  cells.push_back(format_sci(r.ratio_direct));
  cells.push_back(format_sci(r.ratio_fft));
  cells.push_back(format_error(r.error));
  cells.push_back(std::to_string(r.units));
  cells.push_back(r.extrapolated ? "1" : "0");
  return cells;
}

}  // namespace

int default_direct_max(int dimension) { return dimension == 1 ? (1 << 15) : 256; }

void validate(const BenchConfig& cfg) {
  if (cfg.dimension != 1 && cfg.dimension != 2) throw UsageError("dimension must be 1 or 2");
  if (cfg.sizes.empty()) throw UsageError("at least one N is required");
  for (int n : cfg.sizes) {
    if (n < 2 || !is_power_of_two(n)) throw UsageError("N must be a power of two >= 2, got " + std::to_string(n));
  }
  if (cfg.repetitions < 1) throw UsageError("repetitions must be >= 1");
  if (cfg.direct_max < 0) throw UsageError("direct-max must be >= 0");
  if (cfg.sample_size < 1) throw UsageError("sample size must be >= 1");
  if (cfg.dimension == 2) {
    if (cfg.grid_sizes.empty()) throw UsageError("at least one p is required in 2D");
    for (int p : cfg.grid_sizes) {
      if (p < 2) throw UsageError("p must be >= 2");
    }
  }
}

CutoffProfile1D resolve_profile_1d(const BenchConfig& cfg) {
  if (is_builtin(cfg.profile, builtin_profile_names_1d())) return profile1d_by_name(cfg.profile);
  require_velocity_scales(cfg);
  return cutoff_from_velocity(read_velocity_1d_file(cfg.profile), cfg.omega, cfg.kappa);
}

CutoffProfile2D resolve_profile_2d(const BenchConfig& cfg) {
  if (is_builtin(cfg.profile, builtin_profile_names_2d())) return profile2d_by_name(cfg.profile);
  require_velocity_scales(cfg);
  return cutoff_from_velocity(read_velocity_2d_file(cfg.profile), cfg.omega, cfg.kappa);
}

std::vector<BenchRow> run_bench_1d(const BenchConfig& cfg, std::ostream* progress) {
  validate(cfg);
  if (cfg.dimension != 1) throw UsageError("run_bench_1d needs dimension 1");
  const CutoffProfile1D profile = resolve_profile_1d(cfg);
  const int direct_max = cfg.direct_max > 0 ? cfg.direct_max : default_direct_max(1);
  const Pft1dOptions options{cfg.threads};

  // Direct cost model T = C n^2, calibrated at the largest measured n.
  std::optional<double> direct_constant;
  auto calibrate = [&](int n) {
    const SampledCutoff1D c = sample_cutoff_1d(profile, n);
    const Field1D f(random_complex(static_cast<std::size_t>(n), cfg.seed));
    const double t = time_once([&] { (void)direct_pft_1d(f, c, cfg.threads); });
    return t / (static_cast<double>(n) * n);
  };

  std::vector<BenchRow> rows;
  for (int n : sorted_sizes(cfg)) {
    const SampledCutoff1D c = sample_cutoff_1d(profile, n);
    const Field1D f(random_complex(static_cast<std::size_t>(n), cfg.seed));
    BenchRow row;
    row.n = n;
    row.units = decompose_1d(c).box_count();

    Field1D u;
    row.t_algo = median_seconds([&] { u = pft1d_apply(f, c, options); }, cfg.repetitions);
    row.t_fft = fft_seconds(FftPlan(n, FftSign::Positive, FftEffort::Measure), cfg.repetitions);

    if (n <= direct_max) {
      Field1D exact;
      row.t_direct = time_once([&] { exact = direct_pft_1d(f, c, cfg.threads); });
      direct_constant = row.t_direct / (static_cast<double>(n) * n);
      row.error = relative_error(exact.values(), u.values());
    } else {
      if (!direct_constant) direct_constant = calibrate(direct_max);
      row.t_direct = *direct_constant * static_cast<double>(n) * n;
      row.extrapolated = true;
      const auto idx = sample_indices(static_cast<std::size_t>(n), std::min<std::size_t>(cfg.sample_size, n), cfg.seed);
      std::vector<int> xs(idx.begin(), idx.end());
      const auto exact = direct_pft_1d_at(f, c, xs);
      std::vector<Complex> approx;
      for (int x : xs) approx.push_back(u[x]);
      row.error = relative_error(exact, approx);
    }
    row.ratio_direct = row.t_direct / row.t_algo;
    row.ratio_fft = row.t_algo / row.t_fft;
    rows.push_back(row);
    if (progress != nullptr) *progress << "# N=" << n << " T_a=" << format_sci(row.t_algo) << '\n';
  }
  return rows;
}

std::vector<BenchRow> run_bench_2d(const BenchConfig& cfg, std::ostream* progress) {
  validate(cfg);
  if (cfg.dimension != 2) throw UsageError("run_bench_2d needs dimension 2");
  const CutoffProfile2D profile = resolve_profile_2d(cfg);
  const int direct_max = cfg.direct_max > 0 ? cfg.direct_max : default_direct_max(2);

  // Direct cost model T = C n^4.
  std::optional<double> direct_constant;
  auto n4 = [](int n) { return static_cast<double>(n) * n * n * n; };

  std::vector<BenchRow> rows;
  for (int n : sorted_sizes(cfg)) {
    const SampledCutoff2D c = sample_cutoff_2d(profile, n);
    const auto count = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    const Field2D f(n, random_complex(count, cfg.seed));
    const Decomposition2D d = decompose_2d(c);
    const std::size_t groups = group_boxes_by_interval(d).size();
    const double t_fft = fft_seconds(FftPlan(n, n, FftSign::Positive, FftEffort::Measure), cfg.repetitions);

    const auto idx = sample_indices(count, std::min(cfg.sample_size, count), cfg.seed);
    const std::vector<Point> sample = indices_to_points(idx, n);
    const std::vector<Complex> exact = direct_pft_2d_at(f, c, sample);

    double t_direct = 0.0;
    bool extrapolated = false;
    if (n <= direct_max) {
      t_direct = time_once([&] { (void)direct_pft_2d(f, c, cfg.threads); });
      direct_constant = t_direct / n4(n);
    } else {
      if (!direct_constant) {
        const SampledCutoff2D cc = sample_cutoff_2d(profile, direct_max);
        const Field2D fc(direct_max, random_complex(static_cast<std::size_t>(direct_max) * direct_max, cfg.seed));
        direct_constant = time_once([&] { (void)direct_pft_2d(fc, cc, cfg.threads); }) / n4(direct_max);
      }
      t_direct = *direct_constant * n4(n);
      extrapolated = true;
    }

    for (int p : cfg.grid_sizes) {
      const Pft2dOptions options{GridSpec(p, cfg.node_family), GroupEvaluator::Butterfly, cfg.threads};
      Field2D u;
      BenchRow row;
      row.n = n;
      row.p = p;
      row.units = groups;
      row.t_algo = median_seconds([&] { u = pft2d_apply(f, d, options); }, cfg.repetitions);
      row.t_fft = t_fft;
      row.t_direct = t_direct;
      row.extrapolated = extrapolated;
      std::vector<Complex> approx;
      approx.reserve(sample.size());
      for (const Point& x : sample) approx.push_back(u.at(x));
      row.error = relative_error(exact, approx);
      row.ratio_direct = row.t_direct / row.t_algo;
      row.ratio_fft = row.t_algo / row.t_fft;
      rows.push_back(row);
      if (progress != nullptr) {
        *progress << "# N=" << n << " p=" << p << " T_a=" << format_sci(row.t_algo)
                  << " E_a=" << format_error(row.error) << '\n';
      }
    }
  }
  return rows;
}

std::string format_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::string emit_table(std::span<const BenchRow> rows, OutputFormat format, int dimension) {
  if (rows.empty()) throw UsageError("emit_table: no rows");
  const auto header = csv_header(dimension);
  std::ostringstream out;
  if (format == OutputFormat::Csv) {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
      out << '\n';
    };
    line(header);
    for (const BenchRow& r : rows) line(row_cells(r, dimension));
    return out.str();
  }

  std::vector<std::vector<std::string>> table{header};
  for (const BenchRow& r : rows) table.push_back(row_cells(r, dimension));
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& cells : table) {
    for (std::size_t i = 0; i < cells.size(); ++i) width[i] = std::max(width[i], cells[i].size());
  }
  for (const auto& cells : table) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << cells[i];
    }
    out << '\n';
  }
  return out.str();
}

std::vector<BenchRow> parse_csv(std::string_view csv, int dimension) {
  std::istringstream in{std::string(csv)};
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("parse_csv: empty input");
  const auto header = csv_header(dimension);
  std::vector<BenchRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() != header.size()) throw InvalidArgument("parse_csv: wrong column count in '" + line + "'");
    std::size_t i = 0;
    BenchRow r;
    r.n = std::stoi(cells[i++]);
    if (dimension == 2) r.p = std::stoi(cells[i++]);
    r.t_algo = std::stod(cells[i++]);
    r.ratio_direct = std::stod(cells[i++]);
    r.ratio_fft = std::stod(cells[i++]);
    if (cells[i] != "undefined") r.error = std::stod(cells[i]);
    ++i;
    r.units = static_cast<std::size_t>(std::stoull(cells[i++]));
    r.extrapolated = cells[i++] == "1";
    rows.push_back(r);
  }
  return rows;
}

}  // namespace pft
