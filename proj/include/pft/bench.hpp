#pragma once

// Benchmark harness: per N, time the fast transform, the direct oracle and a
// plain FFT, and report T_a, R_{d/a} = T_direct / T_a, R_{a/f} = T_a / T_fft
// and the error against the oracle.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pft/bench_timing.hpp"
#include "pft/butterfly.hpp"
#include "pft/cutoff.hpp"

namespace pft {

class UsageError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

enum class OutputFormat { Csv, Text };

struct BenchConfig {
  int dimension = 1;
  std::string profile = "sine";  // built-in name (optionally with ":params") or velocity file path
  std::vector<int> sizes;
  std::vector<int> grid_sizes{5, 9};  // p values, 2D only
  NodeFamily node_family = NodeFamily::Uniform;
  int repetitions = 3;
  std::uint64_t seed = 2008;
  int direct_max = 0;  // 0: 2^15 in 1D, 256 in 2D
  std::size_t sample_size = 100;
  OutputFormat format = OutputFormat::Csv;
  std::string out_path;
  double omega = 0.0;  // only for velocity files
  double kappa = 0.0;
  int threads = 0;
};

struct BenchRow {
  int n = 0;
  int p = 0;  // 0 in 1D
  double t_algo = 0.0;
  double t_direct = 0.0;
  double t_fft = 0.0;
  double ratio_direct = 0.0;
  double ratio_fft = 0.0;
  std::optional<double> error;  // nullopt: undefined (vanishing reference)
  std::size_t units = 0;        // boxes (1D) or ring groups (2D)
  bool extrapolated = false;    // t_direct from the fitted cost model
};

int default_direct_max(int dimension);

/// Throws UsageError on invalid configurations.
void validate(const BenchConfig& cfg);

CutoffProfile1D resolve_profile_1d(const BenchConfig& cfg);
CutoffProfile2D resolve_profile_2d(const BenchConfig& cfg);

/// `progress`, when given, receives one line per finished row.
std::vector<BenchRow> run_bench_1d(const BenchConfig& cfg, std::ostream* progress = nullptr);
std::vector<BenchRow> run_bench_2d(const BenchConfig& cfg, std::ostream* progress = nullptr);

/// Three significant digits in scientific notation, e.g. 0.005 -> "5.00e-03".
std::string format_sci(double v);

/// CSV: header line plus one line per row. Text: aligned columns.
/// Throws UsageError for an empty row list.
std::string emit_table(std::span<const BenchRow> rows, OutputFormat format, int dimension);

/// Inverse of emit_table(..., Csv, dimension) at the rendered precision.
std::vector<BenchRow> parse_csv(std::string_view csv, int dimension);

}  // namespace pft
