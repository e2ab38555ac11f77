#include "distl0/datagen.hpp"

#include "distl0/errors.hpp"
#include "distl0/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace distl0 {

Matrix correlation_matrix(std::size_t p, double rho) {
  Matrix sigma(p, p);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      const auto gap = static_cast<double>(i > j ? i - j : j - i);
      sigma(i, j) = gap == 0.0 ? 1.0 : std::pow(rho, gap);
    }
  }
  return sigma;
}

std::pair<Dataset, GroundTruth> generate(const GenerateParams& params) {
  const auto [p, k, n, sigma, rho, seed] = params;
  if (p == 0 || k == 0 || k > p) {
    throw Error(ErrorKind::InvalidParams, "need 1 <= k <= p (k=" + std::to_string(k) +
                                              ", p=" + std::to_string(p) + ")");
  }
  if (n == 0) throw Error(ErrorKind::InvalidParams, "n must be positive");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorKind::InvalidParams, "sigma must be finite and >= 0");
  }
  if (!(rho >= 0.0 && rho < 1.0)) throw Error(ErrorKind::InvalidParams, "rho must lie in [0, 1)");

  Rng rng(seed);

  std::vector<std::size_t> indices(p);
  std::iota(indices.begin(), indices.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(indices[i], indices[i + rng.below(p - i)]);
  }
  GroundTruth truth;
  truth.support.assign(indices.begin(), indices.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(truth.support.begin(), truth.support.end());
  truth.w_star = Vector::Zero(static_cast<Eigen::Index>(p));
  for (std::size_t j : truth.support) truth.w_star(static_cast<Eigen::Index>(j)) = rng.uniform(-1.0, 1.0);
  truth.sigma = sigma;
  truth.rho = rho;
  truth.seed = seed;

  const Matrix root = cholesky(correlation_matrix(p, rho)).lower();
  Dataset data;
  data.x.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  Vector z(static_cast<Eigen::Index>(p));
  for (Eigen::Index r = 0; r < data.x.rows(); ++r) {
    for (Eigen::Index j = 0; j < z.size(); ++j) z(j) = rng.normal();
    data.x.row(r) = (root * z).transpose();
  }
  data.y = data.x * truth.w_star;
  if (sigma > 0.0) {
    for (Eigen::Index r = 0; r < data.y.size(); ++r) data.y(r) += sigma * rng.normal();
  }
  return {std::move(data), std::move(truth)};
}

ShardedDataset partition(const Dataset& data, std::size_t n_agents, std::uint64_t seed) {
  const std::size_t n = data.rows();
  if (n_agents == 0) throw Error(ErrorKind::InvalidParams, "need at least one agent");
  if (n < n_agents) {
    throw Error(ErrorKind::TooFewRows, std::to_string(n) + " rows cannot cover " +
                                           std::to_string(n_agents) + " agents");
  }
  if (n_agents == 1) return {data};

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  Rng rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);

  ShardedDataset shards;
  shards.reserve(n_agents);
  const std::size_t base = n / n_agents;
  const std::size_t extra = n % n_agents;
  std::size_t offset = 0;
  for (std::size_t a = 0; a < n_agents; ++a) {
    const std::size_t size = base + (a < extra ? 1 : 0);
    Dataset shard;
    shard.x.resize(static_cast<Eigen::Index>(size), data.x.cols());
    shard.y.resize(static_cast<Eigen::Index>(size));
    for (std::size_t r = 0; r < size; ++r) {
      const Eigen::Index src = order[offset + r];
      shard.x.row(static_cast<Eigen::Index>(r)) = data.x.row(src);
      shard.y(static_cast<Eigen::Index>(r)) = data.y(src);
    }
    offset += size;
    shards.push_back(std::move(shard));
  }
  return shards;
}

Dataset concatenate(const ShardedDataset& shards) {
  if (shards.empty()) throw Error(ErrorKind::InvalidParams, "no shards to concatenate");
  Eigen::Index rows = 0;
  const Eigen::Index p = shards.front().x.cols();
  for (const auto& s : shards) {
    if (s.x.cols() != p) throw Error(ErrorKind::ShapeMismatch, "shards disagree on feature count");
    rows += s.x.rows();
  }
  Dataset out;
  out.x.resize(rows, p);
  out.y.resize(rows);
  Eigen::Index at = 0;
  for (const auto& s : shards) {
    out.x.middleRows(at, s.x.rows()) = s.x;
    out.y.segment(at, s.y.size()) = s.y;
    at += s.x.rows();
  }
  return out;
}

}  // namespace distl0
