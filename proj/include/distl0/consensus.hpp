#pragma once

// Synchronous dual ascent over a communication graph. Each round every agent
//   1. forms D_i = L_ii psi_i + sum_{j in N(i)} L_ij psi_j from its neighbors'
//      multipliers,
//   2. solves its sparse local problem with the linear term <D_i, w>,
//   3. updates psi_i += alpha_t (L_ii w_i + sum_{j in N(i)} L_ij w_j).
// The sum of the local optima is the Lagrangian dual value at psi, a lower
// bound on the pooled sparse regression optimum.

#include "distl0/datagen.hpp"
#include "distl0/local_qip.hpp"
#include "distl0/topology.hpp"

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace distl0 {

class StepSchedule {
 public:
  enum class Kind { harmonic, adaptive };

  /// alpha_t = alpha0 / t.
  static StepSchedule harmonic(double alpha0);
  /// Constant alpha, multiplied by kappa whenever every agent's local error
  /// is at least its previous value.
  static StepSchedule adaptive(double alpha0, double kappa);
  /// `harmonic:a0=<float>` or `adaptive:a0=<float>,kappa=<float>`.
  static StepSchedule parse(std::string_view text);

  /// Step for round t >= 1. eps_prev is empty on the first round.
  double step(std::size_t t, std::span<const double> eps_now, std::span<const double> eps_prev);

  Kind kind() const noexcept { return kind_; }
  double alpha0() const noexcept { return alpha0_; }
  double kappa() const noexcept { return kappa_; }
  double current() const noexcept { return alpha_; }
  std::string to_string() const;

 private:
  StepSchedule(Kind kind, double alpha0, double kappa);

  Kind kind_;
  double alpha0_;
  double kappa_;
  double alpha_;
};

struct RunConfig {
  std::size_t n_agents = 1;
  TopologySpec topology;
  double gamma = 0.01;      // pooled ridge weight; agents use gamma * n_agents
  std::size_t k = 1;
  std::size_t max_iter = 100;
  double tol = 1e-5;        // stop once the consensus error is at or below this
  StepSchedule schedule = StepSchedule::adaptive(0.05, 0.8);
  std::uint64_t seed = 1;   // partition and topology seed
};

struct AgentState {
  Vector psi;
  Vector w;
  Support s;
  double local_error = 0.0;
  double local_objective = 0.0;
};

struct IterationRecord {
  std::size_t t = 0;
  double alpha = 0.0;
  double consensus_error = 0.0;
  double dual_value = 0.0;
  double mean_local_error = 0.0;
  std::chrono::duration<double, std::milli> wall_time{0};
};

/// Per-agent transformed problems with gbar = gamma * N.
struct AgentSolvers {
  std::vector<LocalProblem> problems;
  std::size_t k = 0;
  OuterApproxOptions options;
};

AgentSolvers make_solvers(const ShardedDataset& shards, double gamma, std::size_t k);

/// Zero multipliers; w and s stay empty until the first round.
std::vector<AgentState> init_agents(const ShardedDataset& shards, const Topology& topo, const RunConfig& cfg);

/// Records (reader, owner) each time an agent reads a value owned by another
/// or itself.
struct AccessLog {
  std::vector<std::pair<std::size_t, std::size_t>> reads;
};

/// One synchronous round; updates `states` in place and returns its record.
IterationRecord run_round(std::vector<AgentState>& states, const Topology& topo, const AgentSolvers& solvers,
                          StepSchedule& schedule, std::size_t t, AccessLog* log = nullptr);

/// (1/|E|) sum over edges of ||w_i - w_j||_2; 0 for a graph without edges.
double consensus_error(std::span<const AgentState> states, const Topology& topo);

/// eps_i = (1/|N(i)|) sum_{j in N(i)} ||w_i - w_j||_2^2; 0 for an isolated agent.
std::vector<double> local_errors(std::span<const AgentState> states, const Topology& topo);

struct RunResult {
  std::vector<IterationRecord> trace;
  std::vector<AgentState> states;
  std::uint64_t topology_seed = 0;
};

/// Rounds t = 1..max_iter, stopping early once consensus_error <= tol.
RunResult run(const ShardedDataset& shards, const Topology& topo, const RunConfig& cfg);

/// Partitions `data` and builds the topology from cfg, both seeded with cfg.seed.
RunResult run(const RunConfig& cfg, const Dataset& data);

}  // namespace distl0
