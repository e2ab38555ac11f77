#pragma once

#include "distl0/linalg.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace distl0 {

enum class GraphKind { clique, star, cycle, path, watts_strogatz };

/// Graph family plus its parameters. Text form: `clique`, `star`, `cycle`,
/// `path`, `ws:K=<even int>,beta=<float>`.
struct TopologySpec {
  GraphKind kind = GraphKind::clique;
  std::size_t ws_degree = 0;  // K, mean degree of the ring lattice
  double ws_beta = 0.0;       // rewiring probability

  static TopologySpec parse(std::string_view text);
  std::string to_string() const;
};

/// Undirected, connected, unweighted communication graph.
class Topology {
 public:
  /// Builds the named family on n_agents nodes. Watts-Strogatz graphs that
  /// come out disconnected are rebuilt with seed+1, seed+2, ... (at most 100
  /// attempts). A single agent is allowed for clique/star/path and gives the
  /// empty graph.
  static Topology build(const TopologySpec& spec, std::size_t n_agents, std::uint64_t seed);

  /// Graph from an explicit edge list; throws InvalidParams on self-loops,
  /// out-of-range endpoints, or a disconnected result.
  static Topology from_edges(std::size_t n_agents, std::vector<std::pair<std::size_t, std::size_t>> edges);

  std::size_t size() const noexcept { return neighbors_.size(); }
  std::size_t degree(std::size_t i) const { return neighbors_.at(i).size(); }
  std::span<const std::size_t> neighbors(std::size_t i) const { return neighbors_.at(i); }

  /// Sorted (i < j) pairs.
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const noexcept { return edges_; }

  /// Degree matrix minus adjacency.
  const Matrix& laplacian() const noexcept { return laplacian_; }

  /// Seed that produced the graph after any connectivity retries.
  std::uint64_t effective_seed() const noexcept { return effective_seed_; }

 private:
  std::vector<std::vector<std::size_t>> neighbors_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  Matrix laplacian_;
  std::uint64_t effective_seed_ = 0;
};

/// BFS from node 0.
bool is_connected(std::size_t n, const std::vector<std::vector<std::size_t>>& adjacency);

/// Returns the value stored for agent j, or nullptr when it was never
/// shared. Agents only ever query themselves and their neighbors.
using AgentValueLookup = std::function<const Vector*(std::size_t agent)>;

/// Row i of L applied to per-agent vectors: deg(i) v_i - sum_{j in N(i)} v_j.
/// Reads only i and N(i); a missing entry raises MissingNeighborValue.
Vector apply_laplacian_row(const Topology& topo, std::size_t i, const AgentValueLookup& lookup);

Vector apply_laplacian_row(const Topology& topo, std::size_t i, std::span<const Vector> values);

}  // namespace distl0
