#include "distl0/support.hpp"

#include "distl0/errors.hpp"

#include <algorithm>

namespace distl0 {

Support Support::from_indices(std::size_t p, const std::vector<std::size_t>& indices) {
  Support s(p);
  for (std::size_t i : indices) {
    if (i >= p) throw Error(ErrorKind::DimensionMismatch, "support index " + std::to_string(i) + " >= p");
    s.bits[i] = 1;
  }
  return s;
}

std::size_t Support::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

std::vector<std::size_t> Support::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) out.push_back(i);
  return out;
}

std::string Support::to_string() const {
  std::string out;
  out.reserve(bits.size());
  for (auto b : bits) out.push_back(b ? '1' : '0');
  return out;
}

}  // namespace distl0
