#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace distl0 {

/// Seedable generator whose output is identical on every platform.
///
/// The engine is std::mt19937_64, whose sequence is fixed by the standard.
/// The standard distributions are not, so the conversions to uniform,
/// bounded-integer and Gaussian variates are done here.
class Rng {
 public:
  static constexpr std::string_view kName = "mt19937_64+box-muller";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Unbiased integer in [0, n); n must be positive.
  std::size_t below(std::size_t n);

  /// Standard normal via the Box-Muller transform; caches the second variate.
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace distl0
