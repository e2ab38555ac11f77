#include "distl0/rng.hpp"

#include <cmath>
#include <numbers>

namespace distl0 {

std::size_t Rng::below(std::size_t n) {
  const auto bound = static_cast<std::uint64_t>(n);
  // 2^64 mod n; draws below it would bias the low residues.
  const std::uint64_t reject = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = engine_();
    if (x >= reject) return static_cast<std::size_t>(x % bound);
  }
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

}  // namespace distl0
