#pragma once

// Size-s fractional Fourier transform with phase increment 1/n:
//
//   g_{x'} = sum_{k'=0}^{s-1} e^{2 pi i x' k' / n} f_{k'},   0 <= x' < s.
//
// Evaluated by chirp-z (Bluestein): with w_j = e^{pi i j^2 / n},
//   e^{2 pi i x'k'/n} = w_{x'} * conj(w_{x'-k'}) * w_{k'},
// so the middle factor is a linear convolution, done as a cyclic one of
// power-of-two length L >= 2s - 1.

#include <memory>
#include <span>
#include <vector>

#include "pft/fft.hpp"
#include "pft/types.hpp"

namespace pft {

inline constexpr int kDefaultFrftDirectThreshold = 16;

/// Per-call scratch for FrftPlan::apply; never share one between threads.
class FrftWorkspace {
 public:
  FrftWorkspace() = default;
  AlignedBuffer& buffer(std::size_t size) {
    if (buffer_.size() != size) buffer_ = AlignedBuffer(size);
    return buffer_;
  }
  /// Caller-side staging area (not touched by FrftPlan::apply).
  std::span<Complex> staging(std::size_t size) {
    if (staging_.size() < size) staging_.resize(size);
    return {staging_.data(), size};
  }

 private:
  AlignedBuffer buffer_;
  std::vector<Complex> staging_;
};

class FrftPlan {
 public:
  /// s, n powers of two with 1 <= s <= n. Sizes s <= direct_threshold are
  /// evaluated by the exact O(s^2) sum instead of the convolution.
  FrftPlan(int s, int n, int direct_threshold = kDefaultFrftDirectThreshold);

  int size() const { return s_; }
  int n() const { return n_; }
  double alpha() const { return 1.0 / n_; }
  bool uses_convolution() const { return convolve_; }
  /// Padded cyclic convolution length; 0 when the direct path is used.
  int padded_length() const { return convolve_ ? length_ : 0; }

  /// chirp()[j + s - 1] = e^{pi i j^2 / n} for j = -(s-1)..(s-1).
  std::span<const Complex> chirp() const { return chirp_; }

  void apply(std::span<const Complex> in, std::span<Complex> out, FrftWorkspace& ws) const;
  std::vector<Complex> apply(std::span<const Complex> in) const;

 private:
  int s_;
  int n_;
  bool convolve_;
  int length_ = 0;
  std::vector<Complex> chirp_;
  std::vector<Complex> dense_;           // s x s matrix for the direct path
  AlignedBuffer kernel_hat_;             // FFT of the conj-chirp kernel, scaled by 1/L
  std::unique_ptr<FftPlan> forward_;
  std::unique_ptr<FftPlan> backward_;
};

}  // namespace pft
