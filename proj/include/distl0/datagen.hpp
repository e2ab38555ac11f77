#pragma once

#include "distl0/linalg.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace distl0 {

/// Design matrix (n x p) and observations (n).
struct Dataset {
  Matrix x;
  Vector y;

  std::size_t rows() const noexcept { return static_cast<std::size_t>(x.rows()); }
  std::size_t features() const noexcept { return static_cast<std::size_t>(x.cols()); }
};

/// One dataset per agent, all with the same feature count.
using ShardedDataset = std::vector<Dataset>;

struct GroundTruth {
  Vector w_star;
  std::vector<std::size_t> support;  // ascending
  double sigma = 0.0;
  double rho = 0.0;
  std::uint64_t seed = 0;
};

struct GenerateParams {
  std::size_t p = 0;
  std::size_t k = 0;
  std::size_t n = 0;
  double sigma = 0.1;
  double rho = 0.1;
  std::uint64_t seed = 1;
};

/// Synthetic sparse regression data Y = X w* + W.
///
/// Draw order from a single Rng(seed): k support indices (partial
/// Fisher-Yates over 0..p-1), the k nonzero values of w* uniform on [-1, 1]
/// in ascending index order, then n rows of X as L z with z standard normal
/// and L the Cholesky factor of Sigma_ij = rho^|i-j|, then n noise draws
/// N(0, sigma^2).
std::pair<Dataset, GroundTruth> generate(const GenerateParams& params);

/// Shuffle rows with Rng(seed) and cut the permutation into contiguous
/// blocks; the first n mod N shards get one extra row. A single shard keeps
/// the original row order.
ShardedDataset partition(const Dataset& data, std::size_t n_agents, std::uint64_t seed);

/// Stack shards back into one dataset, in shard order.
Dataset concatenate(const ShardedDataset& shards);

/// Sigma_ij = rho^|i-j|.
Matrix correlation_matrix(std::size_t p, double rho);

}  // namespace distl0
