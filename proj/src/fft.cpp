#include "pft/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <new>

static_assert(sizeof(pft::Complex) == sizeof(fftw_complex));

namespace pft {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

unsigned planner_flags(FftEffort effort) {
  return effort == FftEffort::Measure ? FFTW_MEASURE : FFTW_ESTIMATE;
}

int fftw_sign(FftSign sign) { return sign == FftSign::Positive ? FFTW_BACKWARD : FFTW_FORWARD; }

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

void detail::FftwFree::operator()(Complex* p) const noexcept { fftw_free(p); }

AlignedBuffer::AlignedBuffer(std::size_t size) : size_(size) {
  if (size == 0) return;
  auto* raw = reinterpret_cast<Complex*>(fftw_alloc_complex(size));
  if (raw == nullptr) throw std::bad_alloc();
  std::fill(raw, raw + size, Complex{});
  data_.reset(raw);
}

FftPlan::FftPlan(int length, FftSign sign, FftEffort effort) : size_(static_cast<std::size_t>(length)) {
  if (length <= 0) throw InvalidArgument("FftPlan: length must be positive");
  AlignedBuffer scratch(size_);
  std::lock_guard lock(planner_mutex());
  plan_ = fftw_plan_dft_1d(length, as_fftw(scratch.data()), as_fftw(scratch.data()), fftw_sign(sign),
                           planner_flags(effort));
  if (plan_ == nullptr) throw std::runtime_error("FftPlan: FFTW planning failed");
}

FftPlan::FftPlan(int rows, int cols, FftSign sign, FftEffort effort)
    : size_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
  if (rows <= 0 || cols <= 0) throw InvalidArgument("FftPlan: shape must be positive");
  AlignedBuffer scratch(size_);
  std::lock_guard lock(planner_mutex());
  plan_ = fftw_plan_dft_2d(rows, cols, as_fftw(scratch.data()), as_fftw(scratch.data()), fftw_sign(sign),
                           planner_flags(effort));
  if (plan_ == nullptr) throw std::runtime_error("FftPlan: FFTW planning failed");
}

FftPlan::~FftPlan() {
  if (plan_ != nullptr) {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  }
}

FftPlan::FftPlan(FftPlan&& other) noexcept : plan_(other.plan_), size_(other.size_) {
  other.plan_ = nullptr;
  other.size_ = 0;
}

FftPlan& FftPlan::operator=(FftPlan&& other) noexcept {
  if (this != &other) {
    std::swap(plan_, other.plan_);
    std::swap(size_, other.size_);
  }
  return *this;
}

void FftPlan::execute(const Complex* in, Complex* out) const {
  // FFTW's new-array execute takes a non-const input pointer but does not
  // write to it for out-of-place plans.
  fftw_execute_dft(static_cast<fftw_plan>(plan_), as_fftw(const_cast<Complex*>(in)), as_fftw(out));
}

std::vector<Complex> fft(std::span<const Complex> in, FftSign sign) {
  const FftPlan plan(static_cast<int>(in.size()), sign);
  AlignedBuffer buf(in.size());
  std::copy(in.begin(), in.end(), buf.data());
  plan.execute(buf);
  return {buf.data(), buf.data() + buf.size()};
}

std::vector<Complex> fft2d(std::span<const Complex> in, int n, FftSign sign) {
  if (in.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw InvalidArgument("fft2d: input is not n*n");
  }
  const FftPlan plan(n, n, sign);
  AlignedBuffer buf(in.size());
  std::copy(in.begin(), in.end(), buf.data());
  plan.execute(buf);
  return {buf.data(), buf.data() + buf.size()};
}

}  // namespace pft
