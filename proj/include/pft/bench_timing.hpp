#pragma once

#include <algorithm>
#include <chrono>
#include <vector>

namespace pft {

template <class Fn>
double time_once(Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

/// Wall-clock seconds of fn(), median over `repetitions` after one discarded warm-up.
template <class Fn>
double median_seconds(Fn&& fn, int repetitions) {
  fn();  // warm-up
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(repetitions));
  for (int r = 0; r < repetitions; ++r) samples.push_back(time_once(fn));
  std::sort(samples.begin(), samples.end());
  const std::size_t mid = samples.size() / 2;
  return samples.size() % 2 == 1 ? samples[mid] : 0.5 * (samples[mid - 1] + samples[mid]);
}

}  // namespace pft
