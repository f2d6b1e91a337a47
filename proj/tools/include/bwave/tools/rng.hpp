#pragma once

#include <cmath>
#include <cstdint>

namespace bwave::tools {

/// SplitMix64: a counter-based generator. Output i is mix(seed + (i+1) * gamma),
/// so streams are reproducible across platforms, and split() derives
/// independent child streams from a label.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed = 42) : state_(seed) {}

  std::uint64_t next() {
    state_ += kGamma;
    return mix(state_);
  }

  SplitMix64 split(std::uint64_t label) const { return SplitMix64(mix(state_ ^ mix(label + kGamma))); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [lo, hi].
  long long integer(long long lo, long long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long long>(next() % span);
  }

  /// Standard normal by Box-Muller.
  double normal() {
    double u = uniform();
    while (u <= 0.0) u = uniform();
    const double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * v);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace bwave::tools
