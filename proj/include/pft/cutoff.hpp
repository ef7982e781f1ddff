#pragma once

// Cutoff functions c0 : [0,1]^d -> [0,1] and their integer samplings
// c_x = ceil(N * c0(x/N)), which define the per-point frequency limit.

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "pft/types.hpp"

namespace pft {

namespace profile1d {
struct Constant {
  double value;
};
/// c0(t) = start + (end - start) t
struct Linear {
  double start;
  double end;
};
/// c0(t) = mean + amplitude sin(2 pi periods t)
struct Sine {
  double mean;
  double amplitude;
  double periods;
};
/// Sample j sits at t = j / size; piecewise linear in between, held constant
/// past the last sample, clamped to [0,1].
struct Table {
  std::vector<double> values;
};
}  // namespace profile1d

class CutoffProfile1D {
 public:
  using Kind = std::variant<profile1d::Constant, profile1d::Linear, profile1d::Sine, profile1d::Table>;

  static CutoffProfile1D constant(double value) { return CutoffProfile1D(profile1d::Constant{value}); }
  static CutoffProfile1D linear(double start, double end) { return CutoffProfile1D(profile1d::Linear{start, end}); }
  static CutoffProfile1D sine(double mean, double amplitude, double periods) {
    return CutoffProfile1D(profile1d::Sine{mean, amplitude, periods});
  }
  static CutoffProfile1D table(std::vector<double> values);

  double operator()(double t) const;
  const Kind& kind() const { return kind_; }

 private:
  explicit CutoffProfile1D(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

namespace profile2d {
struct Constant {
  double value;
};
/// floor + (peak - floor) exp(-|t - center|^2 / (2 width^2))
struct Gaussian {
  double center1;
  double center2;
  double width;
  double floor;
  double peak;
};
/// mean + amplitude sin(2 pi periods1 t1) sin(2 pi periods2 t2)
struct SeparableSine {
  double mean;
  double amplitude;
  double periods1;
  double periods2;
};
/// rows x cols samples, row-major; sample (i,j) sits at t = (i/rows, j/cols).
/// Bilinear in between, clamped to [0,1].
struct Table {
  int rows;
  int cols;
  std::vector<double> values;
};
}  // namespace profile2d

class CutoffProfile2D {
 public:
  using Kind =
      std::variant<profile2d::Constant, profile2d::Gaussian, profile2d::SeparableSine, profile2d::Table>;

  static CutoffProfile2D constant(double value) { return CutoffProfile2D(profile2d::Constant{value}); }
  static CutoffProfile2D gaussian(double center1, double center2, double width, double floor, double peak) {
    return CutoffProfile2D(profile2d::Gaussian{center1, center2, width, floor, peak});
  }
  static CutoffProfile2D separable_sine(double mean, double amplitude, double periods1, double periods2) {
    return CutoffProfile2D(profile2d::SeparableSine{mean, amplitude, periods1, periods2});
  }
  static CutoffProfile2D table(int rows, int cols, std::vector<double> values);

  double operator()(double t1, double t2) const;
  const Kind& kind() const { return kind_; }

 private:
  explicit CutoffProfile2D(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

/// Integer cutoffs c_x in [0, n] for x in [0, n).
class SampledCutoff1D {
 public:
  SampledCutoff1D(int n, std::vector<int> c);

  int n() const { return n_; }
  int operator[](int x) const { return c_[static_cast<std::size_t>(x)]; }
  const std::vector<int>& values() const { return c_; }
  std::int64_t total() const;  // sum_x c_x

 private:
  int n_;
  std::vector<int> c_;
};

/// Integer cutoffs on the n x n grid, row-major.
class SampledCutoff2D {
 public:
  SampledCutoff2D(int n, std::vector<int> c);

  int n() const { return n_; }
  int at(int x1, int x2) const {
    return c_[static_cast<std::size_t>(x1) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(x2)];
  }
  const std::vector<int>& values() const { return c_; }
  std::int64_t total() const;

 private:
  int n_;
  std::vector<int> c_;
};

/// c_x = ceil(n c0(x/n)), clamped to [0, n]. Throws InvalidArgument for a
/// non-power-of-two n (or n < 2) and InvalidProfile if c0(x/n) is outside [0,1].
SampledCutoff1D sample_cutoff_1d(const CutoffProfile1D& profile, int n);
SampledCutoff2D sample_cutoff_2d(const CutoffProfile2D& profile, int n);

/// Velocity grid as read from a 2D file: rows x cols, row-major.
struct VelocityGrid {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;
};

/// Table profile clamp(omega / (v kappa), 0, 1). Throws InvalidData for
/// nonpositive velocities and InvalidArgument for nonpositive omega/kappa.
CutoffProfile1D cutoff_from_velocity(const std::vector<double>& velocity, double omega, double kappa);
CutoffProfile2D cutoff_from_velocity(const VelocityGrid& velocity, double omega, double kappa);

/// Whitespace-separated reals.
std::vector<double> read_velocity_1d(std::istream& in);
/// Header line "rows cols" followed by rows*cols reals, row-major.
VelocityGrid read_velocity_2d(std::istream& in);

std::vector<double> read_velocity_1d_file(const std::string& path);
VelocityGrid read_velocity_2d_file(const std::string& path);

/// Layered synthetic velocity slices standing in for the Marmousi / SEG-EAGE
/// cuts (m/s); smooth by construction.
std::vector<double> synthetic_velocity_1d(int samples);
VelocityGrid synthetic_velocity_2d(int samples);

/// Built-in named profiles:
///   1D: constant, linear, sine, velocity
///   2D: constant, gaussian, sine, velocity
/// A name may carry parameters, e.g. "sine:0.5,0.3,2" or "constant:0.25".
CutoffProfile1D profile1d_by_name(const std::string& spec);
CutoffProfile2D profile2d_by_name(const std::string& spec);

std::vector<std::string> builtin_profile_names_1d();
std::vector<std::string> builtin_profile_names_2d();

}  // namespace pft
