#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace distl0 {

/// Binary support indicator s in {0,1}^p. Ordering is lexicographic on the
/// bit vector (0 < 1), which is the tie-break order used by every solver.
struct Support {
  std::vector<std::uint8_t> bits;

  Support() = default;
  explicit Support(std::size_t p) : bits(p, 0) {}

  static Support from_indices(std::size_t p, const std::vector<std::size_t>& indices);
  static Support all(std::size_t p) {
    Support s;
    s.bits.assign(p, 1);
    return s;
  }

  std::size_t size() const noexcept { return bits.size(); }
  std::size_t count() const noexcept;
  bool test(std::size_t i) const { return bits.at(i) != 0; }
  std::vector<std::size_t> indices() const;
  std::vector<double> as_weights() const { return {bits.begin(), bits.end()}; }

  /// "0110..." form.
  std::string to_string() const;

  auto operator<=>(const Support&) const = default;
  bool operator==(const Support&) const = default;
};

}  // namespace distl0
