#pragma once

// Thin RAII layer over FFTW. Everything downstream treats a power-of-two
// complex FFT as a primitive; this is the only file that sees fftw3.h.

#include <cstddef>
#include <memory>
#include <span>

#include "pft/types.hpp"

namespace pft {

namespace detail {
struct FftwFree {
  void operator()(Complex* p) const noexcept;
};
}  // namespace detail

/// SIMD-aligned complex buffer suitable for FftPlan::execute.
class AlignedBuffer {
 public:
  AlignedBuffer() = default;
  explicit AlignedBuffer(std::size_t size);

  std::size_t size() const { return size_; }
  Complex* data() { return data_.get(); }
  const Complex* data() const { return data_.get(); }
  std::span<Complex> span() { return {data_.get(), size_}; }
  std::span<const Complex> span() const { return {data_.get(), size_}; }
  Complex& operator[](std::size_t i) { return data_[i]; }
  const Complex& operator[](std::size_t i) const { return data_[i]; }

 private:
  std::unique_ptr<Complex[], detail::FftwFree> data_;
  std::size_t size_ = 0;
};

/// Sign convention of the exponent: Positive computes sum_j e^{+2 pi i jk/L} a_j.
enum class FftSign { Negative, Positive };

enum class FftEffort { Estimate, Measure };

/// Unnormalized 1D or 2D complex FFT plan. Plans are immutable once built and
/// execute() is safe to call concurrently on distinct aligned buffers.
/// Planning (construction/destruction) is serialized internally.
class FftPlan {
 public:
  /// 1D transform of length `length`.
  FftPlan(int length, FftSign sign, FftEffort effort = FftEffort::Estimate);
  /// 2D transform of shape rows x cols (row-major).
  FftPlan(int rows, int cols, FftSign sign, FftEffort effort = FftEffort::Estimate);
  ~FftPlan();

  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;
  FftPlan(FftPlan&& other) noexcept;
  FftPlan& operator=(FftPlan&& other) noexcept;

  std::size_t size() const { return size_; }

  /// in and out must come from AlignedBuffer (in-place allowed).
  void execute(const Complex* in, Complex* out) const;
  void execute(AlignedBuffer& data) const { execute(data.data(), data.data()); }

 private:
  void* plan_ = nullptr;
  std::size_t size_ = 0;
};

/// Out-of-place convenience transforms on plain vectors (plans per call).
std::vector<Complex> fft(std::span<const Complex> in, FftSign sign);
std::vector<Complex> fft2d(std::span<const Complex> in, int n, FftSign sign);

}  // namespace pft
