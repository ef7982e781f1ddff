#include "pft/cutoff.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <span>
#include <sstream>

namespace pft {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// Piecewise-linear lookup with sample j at u = j; held past the ends.
double lerp_table(std::span<const double> values, double u) {
  const auto m = static_cast<int>(values.size());
  if (u <= 0.0) return values.front();
  const double fl = std::floor(u);
  const int j = static_cast<int>(fl);
  if (j >= m - 1) return values.back();
  const double w = u - fl;
  const auto ju = static_cast<std::size_t>(j);
  return w == 0.0 ? values[ju] : (1.0 - w) * values[ju] + w * values[ju + 1];
}

int sample_point(double value, int n) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw InvalidProfile("cutoff profile value " + std::to_string(value) + " outside [0,1]");
  }
  const double c = std::ceil(static_cast<double>(n) * value);
  return std::clamp(static_cast<int>(c), 0, n);
}

void check_sample_size(int n) {
  if (n < 2 || !is_power_of_two(n)) {
    throw InvalidArgument("cutoff sampling size must be a power of two >= 2, got " + std::to_string(n));
  }
}

void check_velocity_scales(double omega, double kappa) {
  if (!(omega > 0.0) || !(kappa > 0.0)) throw InvalidArgument("omega and kappa must be positive");
}

double velocity_to_cutoff(double v, double omega, double kappa) {
  if (!(v > 0.0)) throw InvalidData("velocity must be positive, got " + std::to_string(v));
  return clamp01(omega / (v * kappa));
}

// "name:a,b,c" -> ("name", {a,b,c})
std::pair<std::string, std::vector<double>> split_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  std::pair<std::string, std::vector<double>> out{spec.substr(0, colon), {}};
  if (colon == std::string::npos) return out;
  std::stringstream ss(spec.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.second.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidArgument("bad numeric parameter '" + item + "' in profile spec '" + spec + "'");
    }
  }
  return out;
}

double param(const std::vector<double>& p, std::size_t i, double fallback) {
  return i < p.size() ? p[i] : fallback;
}

constexpr double kOmega1D = kTwoPi * 100.0;
constexpr double kKappa1D = 0.5;
constexpr double kOmega2D = kTwoPi * 50.0;
constexpr double kKappa2D = 0.25;
constexpr int kSyntheticSamples = 512;

}  // namespace

CutoffProfile1D CutoffProfile1D::table(std::vector<double> values) {
  if (values.empty()) throw InvalidProfile("table profile needs at least one value");
  for (double& v : values) {
    if (std::isnan(v)) throw InvalidProfile("table profile contains NaN");
    v = clamp01(v);
  }
  return CutoffProfile1D(profile1d::Table{std::move(values)});
}

double CutoffProfile1D::operator()(double t) const {
  return std::visit(
      Overloaded{
          [](const profile1d::Constant& k) { return k.value; },
          [t](const profile1d::Linear& k) { return k.start + (k.end - k.start) * t; },
          [t](const profile1d::Sine& k) { return k.mean + k.amplitude * std::sin(kTwoPi * k.periods * t); },
          [t](const profile1d::Table& k) {
            return lerp_table(k.values, t * static_cast<double>(k.values.size()));
          },
      },
      kind_);
}

CutoffProfile2D CutoffProfile2D::table(int rows, int cols, std::vector<double> values) {
  if (rows <= 0 || cols <= 0 || values.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw InvalidProfile("table profile shape does not match its values");
  }
  for (double& v : values) {
    if (std::isnan(v)) throw InvalidProfile("table profile contains NaN");
    v = clamp01(v);
  }
  return CutoffProfile2D(profile2d::Table{rows, cols, std::move(values)});
}

double CutoffProfile2D::operator()(double t1, double t2) const {
  return std::visit(
      Overloaded{
          [](const profile2d::Constant& k) { return k.value; },
          [t1, t2](const profile2d::Gaussian& k) {
            const double d1 = t1 - k.center1;
            const double d2 = t2 - k.center2;
            return k.floor + (k.peak - k.floor) * std::exp(-(d1 * d1 + d2 * d2) / (2.0 * k.width * k.width));
          },
          [t1, t2](const profile2d::SeparableSine& k) {
            return k.mean +
                   k.amplitude * std::sin(kTwoPi * k.periods1 * t1) * std::sin(kTwoPi * k.periods2 * t2);
          },
          [t1, t2](const profile2d::Table& k) {
            // Bilinear: interpolate along columns within the two bracketing rows.
            const double u1 = t1 * static_cast<double>(k.rows);
            const double u2 = t2 * static_cast<double>(k.cols);
            const int i0 = std::clamp(static_cast<int>(std::floor(u1)), 0, k.rows - 1);
            const int i1 = std::min(i0 + 1, k.rows - 1);
            const double w1 = (u1 <= 0.0 || i0 == k.rows - 1) ? 0.0 : u1 - static_cast<double>(i0);
            auto row = [&](int i) {
              return std::span<const double>(k.values).subspan(static_cast<std::size_t>(i) * k.cols,
                                                               static_cast<std::size_t>(k.cols));
            };
            const double a = lerp_table(row(i0), u2);
            if (w1 == 0.0) return a;
            const double b = lerp_table(row(i1), u2);
            return (1.0 - w1) * a + w1 * b;
          },
      },
      kind_);
}

SampledCutoff1D::SampledCutoff1D(int n, std::vector<int> c) : n_(n), c_(std::move(c)) {
  require_power_of_two(n, "cutoff size");
  if (c_.size() != static_cast<std::size_t>(n)) throw InvalidArgument("SampledCutoff1D: length != n");
  for (int v : c_) {
    if (v < 0 || v > n) throw InvalidArgument("SampledCutoff1D: entry outside [0, n]");
  }
}

std::int64_t SampledCutoff1D::total() const { return std::accumulate(c_.begin(), c_.end(), std::int64_t{0}); }

SampledCutoff2D::SampledCutoff2D(int n, std::vector<int> c) : n_(n), c_(std::move(c)) {
  require_power_of_two(n, "cutoff size");
  if (c_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw InvalidArgument("SampledCutoff2D: size != n*n");
  }
  for (int v : c_) {
    if (v < 0 || v > n) throw InvalidArgument("SampledCutoff2D: entry outside [0, n]");
  }
}

std::int64_t SampledCutoff2D::total() const { return std::accumulate(c_.begin(), c_.end(), std::int64_t{0}); }

SampledCutoff1D sample_cutoff_1d(const CutoffProfile1D& profile, int n) {
  check_sample_size(n);
  std::vector<int> c(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    c[static_cast<std::size_t>(x)] = sample_point(profile(static_cast<double>(x) / n), n);
  }
  return {n, std::move(c)};
}

SampledCutoff2D sample_cutoff_2d(const CutoffProfile2D& profile, int n) {
  check_sample_size(n);
  std::vector<int> c(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int x1 = 0; x1 < n; ++x1) {
    for (int x2 = 0; x2 < n; ++x2) {
      const double v = profile(static_cast<double>(x1) / n, static_cast<double>(x2) / n);
      c[static_cast<std::size_t>(x1) * static_cast<std::size_t>(n) + static_cast<std::size_t>(x2)] =
          sample_point(v, n);
    }
  }
  return {n, std::move(c)};
}

CutoffProfile1D cutoff_from_velocity(const std::vector<double>& velocity, double omega, double kappa) {
  check_velocity_scales(omega, kappa);
  if (velocity.empty()) throw InvalidData("empty velocity model");
  std::vector<double> table(velocity.size());
  std::transform(velocity.begin(), velocity.end(), table.begin(),
                 [&](double v) { return velocity_to_cutoff(v, omega, kappa); });
  return CutoffProfile1D::table(std::move(table));
}

CutoffProfile2D cutoff_from_velocity(const VelocityGrid& velocity, double omega, double kappa) {
  check_velocity_scales(omega, kappa);
  if (velocity.values.empty()) throw InvalidData("empty velocity model");
  std::vector<double> table(velocity.values.size());
  std::transform(velocity.values.begin(), velocity.values.end(), table.begin(),
                 [&](double v) { return velocity_to_cutoff(v, omega, kappa); });
  return CutoffProfile2D::table(velocity.rows, velocity.cols, std::move(table));
}

std::vector<double> read_velocity_1d(std::istream& in) {
  std::vector<double> out;
  std::string token;
  while (in >> token) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw InvalidData("velocity file: bad number '" + token + "'");
    }
  }
  if (out.empty()) throw InvalidData("velocity file: no samples");
  return out;
}

VelocityGrid read_velocity_2d(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw InvalidData("velocity file: missing 'rows cols' header");
  std::istringstream hs(header);
  VelocityGrid grid;
  std::string extra;
  if (!(hs >> grid.rows >> grid.cols) || (hs >> extra) || grid.rows <= 0 || grid.cols <= 0) {
    throw InvalidData("velocity file: malformed header '" + header + "'");
  }
  grid.values = read_velocity_1d(in);
  if (grid.values.size() != static_cast<std::size_t>(grid.rows) * static_cast<std::size_t>(grid.cols)) {
    throw InvalidData("velocity file: expected " + std::to_string(grid.rows * grid.cols) + " samples, got " +
                      std::to_string(grid.values.size()));
  }
  return grid;
}

std::vector<double> read_velocity_1d_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidData("cannot open velocity file " + path);
  return read_velocity_1d(in);
}

VelocityGrid read_velocity_2d_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidData("cannot open velocity file " + path);
  return read_velocity_2d(in);
}

std::vector<double> synthetic_velocity_1d(int samples) {
  std::vector<double> v(static_cast<std::size_t>(samples));
  for (int j = 0; j < samples; ++j) {
    const double t = static_cast<double>(j) / samples;
    v[static_cast<std::size_t>(j)] = 1800.0 + 2200.0 * t + 400.0 * std::sin(1.5 * kTwoPi * t);
  }
  return v;
}

VelocityGrid synthetic_velocity_2d(int samples) {
  VelocityGrid g{samples, samples, std::vector<double>(static_cast<std::size_t>(samples) * samples)};
  for (int i = 0; i < samples; ++i) {
    for (int j = 0; j < samples; ++j) {
      const double t1 = static_cast<double>(i) / samples;
      const double t2 = static_cast<double>(j) / samples;
      g.values[static_cast<std::size_t>(i) * samples + j] =
          1800.0 + 2000.0 * t1 + 300.0 * std::sin(kTwoPi * t2) + 200.0 * std::cos(1.5 * kTwoPi * t1 * t2);
    }
  }
  return g;
}

CutoffProfile1D profile1d_by_name(const std::string& spec) {
  const auto [name, p] = split_spec(spec);
  if (name == "constant") return CutoffProfile1D::constant(param(p, 0, 0.5));
  if (name == "linear") return CutoffProfile1D::linear(param(p, 0, 0.1), param(p, 1, 0.9));
  if (name == "sine") return CutoffProfile1D::sine(param(p, 0, 0.5), param(p, 1, 0.3), param(p, 2, 2.0));
  if (name == "velocity") {
    return cutoff_from_velocity(synthetic_velocity_1d(kSyntheticSamples), param(p, 0, kOmega1D),
                                param(p, 1, kKappa1D));
  }
  throw InvalidArgument("unknown 1D profile '" + name + "'");
}

CutoffProfile2D profile2d_by_name(const std::string& spec) {
  const auto [name, p] = split_spec(spec);
  if (name == "constant") return CutoffProfile2D::constant(param(p, 0, 0.5));
  if (name == "gaussian") {
    return CutoffProfile2D::gaussian(param(p, 0, 0.5), param(p, 1, 0.5), param(p, 2, 0.25), param(p, 3, 0.2),
                                     param(p, 4, 0.9));
  }
  if (name == "sine") {
    return CutoffProfile2D::separable_sine(param(p, 0, 0.5), param(p, 1, 0.3), param(p, 2, 1.0),
                                           param(p, 3, 1.0));
  }
  if (name == "velocity") {
    return cutoff_from_velocity(synthetic_velocity_2d(kSyntheticSamples / 2), param(p, 0, kOmega2D),
                                param(p, 1, kKappa2D));
  }
  throw InvalidArgument("unknown 2D profile '" + name + "'");
}

std::vector<std::string> builtin_profile_names_1d() { return {"constant", "linear", "sine", "velocity"}; }
std::vector<std::string> builtin_profile_names_2d() { return {"constant", "gaussian", "sine", "velocity"}; }

}  // namespace pft
