#include "pft/frft.hpp"

#include <algorithm>

namespace pft {

namespace {

// e^{pi i j^2 / n}, with j^2 reduced mod 2n in exact integer arithmetic.
Complex chirp_value(std::int64_t j, int n) {
  const std::int64_t period = 2 * static_cast<std::int64_t>(n);
  const std::int64_t m = (j * j) % period;
  return cis_cycles(static_cast<double>(m) / static_cast<double>(period));
}

}  // namespace

FrftPlan::FrftPlan(int s, int n, int direct_threshold) : s_(s), n_(n), convolve_(s > direct_threshold) {
  require_power_of_two(s, "frft size");
  require_power_of_two(n, "frft modulus");
  if (s > n) throw InvalidArgument("frft size must not exceed n");

  chirp_.resize(static_cast<std::size_t>(2 * s - 1));
  for (int j = -(s - 1); j <= s - 1; ++j) chirp_[static_cast<std::size_t>(j + s - 1)] = chirp_value(j, n);

  if (!convolve_) {
    const PhaseTable phase(n);
    dense_.resize(static_cast<std::size_t>(s) * static_cast<std::size_t>(s));
    for (int x = 0; x < s; ++x) {
      for (int k = 0; k < s; ++k) {
        dense_[static_cast<std::size_t>(x) * s + k] = phase(static_cast<std::int64_t>(x) * k);
      }
    }
    return;
  }

  length_ = 1;
  while (length_ < 2 * s - 1) length_ <<= 1;
  forward_ = std::make_unique<FftPlan>(length_, FftSign::Negative);
  backward_ = std::make_unique<FftPlan>(length_, FftSign::Positive);

  // Cyclic kernel b[m mod L] = conj(w_m), m = -(s-1)..(s-1).
  kernel_hat_ = AlignedBuffer(static_cast<std::size_t>(length_));
  for (int m = -(s - 1); m <= s - 1; ++m) {
    const int slot = (m + length_) % length_;
    kernel_hat_[static_cast<std::size_t>(slot)] = std::conj(chirp_[static_cast<std::size_t>(m + s - 1)]);
  }
  forward_->execute(kernel_hat_);
  const double scale = 1.0 / length_;
  for (std::size_t i = 0; i < kernel_hat_.size(); ++i) kernel_hat_[i] *= scale;
}

void FrftPlan::apply(std::span<const Complex> in, std::span<Complex> out, FrftWorkspace& ws) const {
  if (in.size() != static_cast<std::size_t>(s_) || out.size() != static_cast<std::size_t>(s_)) {
    throw InvalidArgument("frft_apply: input/output length must equal the plan size " + std::to_string(s_));
  }
  const auto s = static_cast<std::size_t>(s_);

  if (!convolve_) {
    for (std::size_t x = 0; x < s; ++x) {
      const Complex* row = dense_.data() + x * s;
      Complex acc{};
      for (std::size_t k = 0; k < s; ++k) acc += row[k] * in[k];
      out[x] = acc;
    }
    return;
  }

  const Complex* w = chirp_.data() + (s - 1);  // w[j] valid for j in [0, s)
  AlignedBuffer& buf = ws.buffer(static_cast<std::size_t>(length_));
  for (std::size_t j = 0; j < s; ++j) buf[j] = w[j] * in[j];
  std::fill(buf.data() + s, buf.data() + buf.size(), Complex{});
  forward_->execute(buf);
  for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= kernel_hat_[i];
  backward_->execute(buf);
  for (std::size_t x = 0; x < s; ++x) out[x] = w[x] * buf[x];
}

std::vector<Complex> FrftPlan::apply(std::span<const Complex> in) const {
  FrftWorkspace ws;
  std::vector<Complex> out(static_cast<std::size_t>(s_));
  apply(in, out, ws);
  return out;
}

}  // namespace pft
