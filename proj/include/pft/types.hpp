#pragma once

#include <cmath>
#include <compare>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pft {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Caller passed sizes or data that violate an operation's precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A cutoff profile evaluated outside [0,1] (or to NaN).
class InvalidProfile : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed or physically meaningless input data (e.g. a nonpositive velocity).
class InvalidData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr bool is_power_of_two(std::int64_t v) { return v > 0 && (v & (v - 1)) == 0; }

constexpr int log2_exact(std::int64_t v) {
  int l = 0;
  while ((std::int64_t{1} << l) < v) ++l;
  return l;
}

/// floor(sqrt(v)) for v >= 0, exact.
constexpr std::int64_t isqrt(std::int64_t v) {
  if (v <= 0) return 0;
  auto r = static_cast<std::int64_t>(__builtin_sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

/// Number of integers j >= 0 with j^2 < v (i.e. ceil(sqrt(v)) for v > 0).
constexpr std::int64_t count_squares_below(std::int64_t v) { return v <= 0 ? 0 : isqrt(v - 1) + 1; }

inline void require_power_of_two(std::int64_t n, const char* what) {
  if (!is_power_of_two(n)) {
    throw InvalidArgument(std::string(what) + " must be a power of two, got " + std::to_string(n));
  }
}

/// e^{2 pi i t}, range-reduced so large phase counts keep full precision.
inline Complex cis_cycles(double t) {
  t -= static_cast<double>(static_cast<std::int64_t>(t));
  const double a = kTwoPi * t;
  return {std::cos(a), std::sin(a)};
}

/// Integer lattice point (x1, x2); ordering is row-major.
struct Point {
  int x1 = 0;
  int x2 = 0;
  auto operator<=>(const Point&) const = default;
};

/// Table of e^{2 pi i m / n} for m in [0, n). Indexing reduces mod n, so
/// exact integer phases x*k can be looked up without rounding drift.
class PhaseTable {
 public:
  explicit PhaseTable(int n);

  int n() const { return n_; }
  Complex operator()(std::int64_t m) const { return table_[static_cast<std::size_t>(m & mask_)]; }

 private:
  int n_;
  std::int64_t mask_;
  std::vector<Complex> table_;
};

/// Complex sequence of length n; houses f_k and u_x in 1D.
class Field1D {
 public:
  Field1D() = default;
  explicit Field1D(int n) : values_(static_cast<std::size_t>(n)) {}
  explicit Field1D(std::vector<Complex> values) : values_(std::move(values)) {}

  int n() const { return static_cast<int>(values_.size()); }
  Complex& operator[](int i) { return values_[static_cast<std::size_t>(i)]; }
  const Complex& operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
  std::span<const Complex> values() const { return values_; }
  std::span<Complex> values() { return values_; }

  bool operator==(const Field1D&) const = default;

 private:
  std::vector<Complex> values_;
};

/// n x n complex grid, row-major with x1 the row index.
class Field2D {
 public:
  Field2D() = default;
  explicit Field2D(int n) : n_(n), values_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {}
  Field2D(int n, std::vector<Complex> values);

  int n() const { return n_; }
  Complex& at(int x1, int x2) { return values_[index(x1, x2)]; }
  const Complex& at(int x1, int x2) const { return values_[index(x1, x2)]; }
  Complex& at(Point p) { return at(p.x1, p.x2); }
  const Complex& at(Point p) const { return at(p.x1, p.x2); }
  std::span<const Complex> values() const { return values_; }
  std::span<Complex> values() { return values_; }

  bool operator==(const Field2D&) const = default;

 private:
  std::size_t index(int x1, int x2) const {
    return static_cast<std::size_t>(x1) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(x2);
  }

  int n_ = 0;
  std::vector<Complex> values_;
};

/// Relative l2 distance ||a - b|| / ||b||.
double relative_l2_error(std::span<const Complex> approx, std::span<const Complex> exact);

/// Complex Gaussian samples (independent N(0,1) real and imaginary parts).
std::vector<Complex> random_complex(std::size_t count, std::uint64_t seed);

/// Run-time worker count: 0 means the OpenMP default.
int resolve_threads(int requested);

}  // namespace pft
