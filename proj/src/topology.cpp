#include "distl0/topology.hpp"

#include "distl0/errors.hpp"
#include "distl0/io.hpp"
#include "distl0/rng.hpp"

#include <algorithm>
#include <charconv>
#include <queue>
#include <set>

namespace distl0 {

namespace {

constexpr int kMaxRewireAttempts = 100;

std::size_t parse_count(std::string_view text) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::InvalidParams, "bad integer '" + std::string(text) + "'");
  }
  return v;
}

using AdjacencySets = std::vector<std::set<std::size_t>>;

AdjacencySets watts_strogatz(std::size_t n, std::size_t degree, double beta, Rng& rng) {
  AdjacencySets adj(n);
  const std::size_t half = degree / 2;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t j = 1; j <= half; ++j) {
      const std::size_t v = (u + j) % n;
      adj[u].insert(v);
      adj[v].insert(u);
    }
  }
  // Same sweep as the classic construction: lattice distance j outermost,
  // each clockwise edge (u, u+j) rewired to a uniform non-neighbor.
  for (std::size_t j = 1; j <= half; ++j) {
    for (std::size_t u = 0; u < n; ++u) {
      if (!(rng.uniform() < beta)) continue;
      const std::size_t v = (u + j) % n;
      if (!adj[u].contains(v)) continue;  // already rewired away
      if (adj[u].size() >= n - 1) continue;
      std::size_t w = rng.below(n);
      while (w == u || adj[u].contains(w)) w = rng.below(n);
      adj[u].erase(v);
      adj[v].erase(u);
      adj[u].insert(w);
      adj[w].insert(u);
    }
  }
  return adj;
}

AdjacencySets family_edges(const TopologySpec& spec, std::size_t n) {
  AdjacencySets adj(n);
  auto link = [&](std::size_t a, std::size_t b) {
    adj[a].insert(b);
    adj[b].insert(a);
  };
  switch (spec.kind) {
    case GraphKind::clique:
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) link(a, b);
      break;
    case GraphKind::star:
      for (std::size_t b = 1; b < n; ++b) link(0, b);
      break;
    case GraphKind::path:
      for (std::size_t a = 0; a + 1 < n; ++a) link(a, a + 1);
      break;
    case GraphKind::cycle:
      for (std::size_t a = 0; a < n; ++a) link(a, (a + 1) % n);
      break;
    case GraphKind::watts_strogatz:
      break;  // handled by the caller
  }
  return adj;
}

std::vector<std::vector<std::size_t>> to_lists(const AdjacencySets& adj) {
  std::vector<std::vector<std::size_t>> lists(adj.size());
  for (std::size_t i = 0; i < adj.size(); ++i) lists[i].assign(adj[i].begin(), adj[i].end());
  return lists;
}

}  // namespace

TopologySpec TopologySpec::parse(std::string_view text) {
  if (text == "clique") return {GraphKind::clique};
  if (text == "star") return {GraphKind::star};
  if (text == "cycle") return {GraphKind::cycle};
  if (text == "path") return {GraphKind::path};
  if (text.starts_with("ws:")) {
    TopologySpec spec{GraphKind::watts_strogatz};
    bool have_k = false;
    bool have_beta = false;
    std::string_view rest = text.substr(3);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) break;
      const std::string_view key = item.substr(0, eq);
      const std::string_view value = item.substr(eq + 1);
      if (key == "K") {
        spec.ws_degree = parse_count(value);
        have_k = true;
      } else if (key == "beta") {
        spec.ws_beta = parse_double(std::string(value));
        have_beta = true;
      } else {
        throw Error(ErrorKind::InvalidParams, "unknown ws parameter '" + std::string(key) + "'");
      }
    }
    if (have_k && have_beta) return spec;
  }
  throw Error(ErrorKind::InvalidParams,
              "bad topology '" + std::string(text) + "' (clique|star|cycle|path|ws:K=<int>,beta=<float>)");
}

std::string TopologySpec::to_string() const {
  switch (kind) {
    case GraphKind::clique: return "clique";
    case GraphKind::star: return "star";
    case GraphKind::cycle: return "cycle";
    case GraphKind::path: return "path";
    case GraphKind::watts_strogatz:
      return "ws:K=" + std::to_string(ws_degree) + ",beta=" + format_double(ws_beta);
  }
  return "unknown";
}

bool is_connected(std::size_t n, const std::vector<std::vector<std::size_t>>& adjacency) {
  if (n == 0) return false;
  std::vector<bool> seen(n, false);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop();
    for (std::size_t v : adjacency[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++reached;
        frontier.push(v);
      }
    }
  }
  return reached == n;
}

Topology Topology::from_edges(std::size_t n_agents,
                              std::vector<std::pair<std::size_t, std::size_t>> edges) {
  if (n_agents == 0) throw Error(ErrorKind::InvalidParams, "topology needs at least one agent");
  AdjacencySets adj(n_agents);
  for (auto [a, b] : edges) {
    if (a == b || a >= n_agents || b >= n_agents) {
      throw Error(ErrorKind::InvalidParams, "bad edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
    adj[a].insert(b);
    adj[b].insert(a);
  }
  Topology t;
  t.neighbors_ = to_lists(adj);
  if (!is_connected(n_agents, t.neighbors_)) {
    throw Error(ErrorKind::InvalidParams, "graph is disconnected");
  }
  const auto n = static_cast<Eigen::Index>(n_agents);
  t.laplacian_ = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < n_agents; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    t.laplacian_(ii, ii) = static_cast<double>(t.neighbors_[i].size());
    for (std::size_t j : t.neighbors_[i]) {
      t.laplacian_(ii, static_cast<Eigen::Index>(j)) = -1.0;
      if (i < j) t.edges_.emplace_back(i, j);
    }
  }
  return t;
}

Topology Topology::build(const TopologySpec& spec, std::size_t n_agents, std::uint64_t seed) {
  if (n_agents == 0) throw Error(ErrorKind::InvalidParams, "topology needs at least one agent");
  const auto edges_of = [](const AdjacencySets& adj) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t a = 0; a < adj.size(); ++a)
      for (std::size_t b : adj[a])
        if (a < b) edges.emplace_back(a, b);
    return edges;
  };

  switch (spec.kind) {
    case GraphKind::cycle:
      if (n_agents < 3) throw Error(ErrorKind::InvalidParams, "cycle needs at least 3 agents");
      break;
    case GraphKind::watts_strogatz:
      if (n_agents < 2 || spec.ws_degree == 0 || spec.ws_degree % 2 != 0 || spec.ws_degree >= n_agents) {
        throw Error(ErrorKind::InvalidParams, "ws needs K even, 0 < K < n_agents");
      }
      if (!(spec.ws_beta >= 0.0 && spec.ws_beta <= 1.0)) {
        throw Error(ErrorKind::InvalidParams, "ws beta must lie in [0, 1]");
      }
      break;
    default:
      break;
  }

  if (spec.kind != GraphKind::watts_strogatz) {
    Topology t = from_edges(n_agents, edges_of(family_edges(spec, n_agents)));
    t.effective_seed_ = seed;
    return t;
  }

  for (int attempt = 0; attempt < kMaxRewireAttempts; ++attempt) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(attempt);
    Rng rng(s);
    const AdjacencySets adj = watts_strogatz(n_agents, spec.ws_degree, spec.ws_beta, rng);
    if (!is_connected(n_agents, to_lists(adj))) continue;
    Topology t = from_edges(n_agents, edges_of(adj));
    t.effective_seed_ = s;
    return t;
  }
  throw Error(ErrorKind::InvalidParams, "watts-strogatz graph stayed disconnected after " +
                                            std::to_string(kMaxRewireAttempts) + " attempts");
}

Vector apply_laplacian_row(const Topology& topo, std::size_t i, const AgentValueLookup& lookup) {
  const auto fetch = [&](std::size_t j) -> const Vector& {
    const Vector* v = lookup(j);
    if (v == nullptr) {
      throw Error(ErrorKind::MissingNeighborValue,
                  "agent " + std::to_string(i) + " has no value for agent " + std::to_string(j));
    }
    return *v;
  };
  Vector out = static_cast<double>(topo.degree(i)) * fetch(i);
  for (std::size_t j : topo.neighbors(i)) {
    const Vector& v = fetch(j);
    if (v.size() != out.size()) throw Error(ErrorKind::DimensionMismatch, "neighbor vector length differs");
    out -= v;
  }
  return out;
}

Vector apply_laplacian_row(const Topology& topo, std::size_t i, std::span<const Vector> values) {
  return apply_laplacian_row(topo, i, [&](std::size_t j) -> const Vector* {
    return j < values.size() ? &values[j] : nullptr;
  });
}

}  // namespace distl0
