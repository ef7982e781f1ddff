// pftbench: benchmark sweeps, invariant self-checks and decomposition dumps.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pft/bench.hpp"
#include "pft/checks.hpp"
#include "pft/decomp.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInvariant = 2;

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw pft::UsageError("cannot open output file " + path);
  out << text;
}

void add_bench_flags(CLI::App* cmd, pft::BenchConfig& cfg) {
  const std::map<std::string, pft::OutputFormat> formats{{"csv", pft::OutputFormat::Csv},
                                                         {"text", pft::OutputFormat::Text}};
  const std::map<std::string, pft::NodeFamily> families{{"uniform", pft::NodeFamily::Uniform},
                                                        {"chebyshev", pft::NodeFamily::Chebyshev}};
  cmd->add_option("--profile", cfg.profile, "built-in profile name (name[:params]) or velocity file")
      ->capture_default_str();
  cmd->add_option("--n", cfg.sizes, "problem sizes (powers of two)")->delimiter(',');
  cmd->add_option("--reps", cfg.repetitions, "timed repetitions (median reported)")->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "input and sample seed")->capture_default_str();
  cmd->add_option("--format", cfg.format, "csv or text")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  cmd->add_option("--out", cfg.out_path, "output file (default stdout)");
  cmd->add_option("--direct-max", cfg.direct_max, "largest N timed directly (0: default)")->capture_default_str();
  cmd->add_option("--omega", cfg.omega, "angular frequency for velocity files");
  cmd->add_option("--kappa", cfg.kappa, "wavenumber scale for velocity files");
  cmd->add_option("--threads", cfg.threads, "worker threads (0: runtime default)")->capture_default_str();
  cmd->add_option("--nodes", cfg.node_family, "butterfly grid nodes: chebyshev or uniform")
      ->transform(CLI::CheckedTransformer(families, CLI::ignore_case));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial Fourier transform benchmarks"};
  app.require_subcommand(1);

  pft::BenchConfig cfg1;
  cfg1.dimension = 1;
  
  auto* bench1d = app.add_subcommand("bench1d", "time the exact 1D transform");
  add_bench_flags(bench1d, cfg1);

  pft::BenchConfig cfg2;
  cfg2.dimension = 2;
  cfg2.profile = "gaussian";
  auto* bench2d = app.add_subcommand("bench2d", "time the approximate 2D transform");
  add_bench_flags(bench2d, cfg2);
  bench2d->add_option("--p", cfg2.grid_sizes, "interpolation grid sizes")->delimiter(',');

  int check_threads = 0;
  auto* check = app.add_subcommand("check", "run the invariant self-checks");
  check->add_option("--threads", check_threads, "worker threads");

  int dump_dim = 1;
  int dump_n = 64;
  std::string dump_profile = "sine";
  std::string dump_out;
  auto* decompose = app.add_subcommand("decompose", "print the dyadic decomposition, one box per line");
  decompose->add_option("--dim", dump_dim, "1 or 2")->check(CLI::IsMember({1, 2}))->capture_default_str();
  decompose->add_option("--profile", dump_profile, "built-in profile name")->capture_default_str();
  decompose->add_option("--n", dump_n, "problem size")->capture_default_str();
  decompose->add_option("--out", dump_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*bench1d || *bench2d) {
      pft::BenchConfig& cfg = *bench1d ? cfg1 : cfg2;
      if (cfg.sizes.empty()) {
        cfg.sizes = cfg.dimension == 1 ? std::vector<int>{1024, 4096, 16384} : std::vector<int>{64, 128};
      }
      const auto rows = cfg.dimension == 1 ? pft::run_bench_1d(cfg, &std::cerr) : pft::run_bench_2d(cfg, &std::cerr);
      write_output(pft::emit_table(rows, cfg.format, cfg.dimension), cfg.out_path);
      return 0;
    }
    if (*check) return pft::run_checks(std::cout, check_threads) ? 0 : kExitInvariant;
    if (*decompose) {
      pft::BenchConfig cfg;
      cfg.dimension = dump_dim;
      cfg.profile = dump_profile;
      cfg.sizes = {dump_n};
      pft::validate(cfg);
      std::ostringstream text;
      if (dump_dim == 1) {
        pft::write_decomposition(text, pft::decompose_1d(pft::sample_cutoff_1d(pft::resolve_profile_1d(cfg), dump_n)));
      } else {
        pft::write_decomposition(text, pft::decompose_2d(pft::sample_cutoff_2d(pft::resolve_profile_2d(cfg), dump_n)));
      }
      write_output(text.str(), dump_out);
      return 0;
    }
  } catch (const pft::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const pft::InvalidProfile& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const pft::InvalidData& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInvariant;
  }
  return 0;
}
