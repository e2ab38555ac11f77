#include "distl0/consensus.hpp"

#include "distl0/errors.hpp"
#include "distl0/io.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace distl0 {

StepSchedule::StepSchedule(Kind kind, double alpha0, double kappa)
    : kind_(kind), alpha0_(alpha0), kappa_(kappa), alpha_(alpha0) {
  if (!(alpha0 > 0.0) || !std::isfinite(alpha0)) throw Error(ErrorKind::InvalidParams, "a0 must be positive");
  if (kind == Kind::adaptive && !(kappa > 0.0 && kappa < 1.0)) {
    throw Error(ErrorKind::InvalidParams, "kappa must lie in (0, 1)");
  }
}

StepSchedule StepSchedule::harmonic(double alpha0) { return StepSchedule(Kind::harmonic, alpha0, 1.0); }

StepSchedule StepSchedule::adaptive(double alpha0, double kappa) {
  return StepSchedule(Kind::adaptive, alpha0, kappa);
}

StepSchedule StepSchedule::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  double a0 = -1.0;
  double kappa = -1.0;
  if (colon != std::string_view::npos) {
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) throw Error(ErrorKind::InvalidParams, "bad schedule item '" + std::string(item) + "'");
      const std::string_view key = item.substr(0, eq);
      const double value = parse_double(std::string(item.substr(eq + 1)));
      if (key == "a0") {
        a0 = value;
      } else if (key == "kappa") {
        kappa = value;
      } else {
        throw Error(ErrorKind::InvalidParams, "unknown schedule parameter '" + std::string(key) + "'");
      }
    }
  }
  if (head == "harmonic" && a0 > 0.0) return harmonic(a0);
  if (head == "adaptive" && a0 > 0.0 && kappa > 0.0) return adaptive(a0, kappa);
  throw Error(ErrorKind::InvalidParams,
              "bad schedule '" + std::string(text) + "' (harmonic:a0=<f> | adaptive:a0=<f>,kappa=<f>)");
}

double StepSchedule::step(std::size_t t, std::span<const double> eps_now, std::span<const double> eps_prev) {
  if (t == 0) throw Error(ErrorKind::InvalidParams, "rounds are numbered from 1");
  if (kind_ == Kind::harmonic) {
    alpha_ = alpha0_ / static_cast<double>(t);
    return alpha_;
  }
  if (!eps_prev.empty()) {
    if (eps_prev.size() != eps_now.size()) throw Error(ErrorKind::DimensionMismatch, "error vectors differ in length");
    bool all_worse = true;
    for (std::size_t i = 0; i < eps_now.size(); ++i) all_worse = all_worse && eps_now[i] >= eps_prev[i];
    if (all_worse) alpha_ *= kappa_;
  }
  return alpha_;
}

std::string StepSchedule::to_string() const {
  if (kind_ == Kind::harmonic) return "harmonic:a0=" + format_double(alpha0_);
  return "adaptive:a0=" + format_double(alpha0_) + ",kappa=" + format_double(kappa_);
}

AgentSolvers make_solvers(const ShardedDataset& shards, double gamma, std::size_t k) {
  if (shards.empty()) throw Error(ErrorKind::ShapeMismatch, "no shards");
  if (!(gamma > 0.0)) throw Error(ErrorKind::InvalidParams, "gamma must be positive");
  const double gamma_bar = gamma * static_cast<double>(shards.size());
  AgentSolvers solvers;
  solvers.k = k;
  solvers.problems.reserve(shards.size());
  for (const Dataset& shard : shards) {
    if (shard.features() != shards.front().features()) {
      throw Error(ErrorKind::ShapeMismatch, "shards disagree on feature count");
    }
    solvers.problems.push_back(make_local_problem(shard, gamma_bar));
  }
  if (k == 0 || k > shards.front().features()) throw Error(ErrorKind::InvalidParams, "need 1 <= k <= p");
  return solvers;
}

std::vector<AgentState> init_agents(const ShardedDataset& shards, const Topology& topo, const RunConfig& cfg) {
  if (shards.size() != topo.size() || shards.size() != cfg.n_agents) {
    throw Error(ErrorKind::ShapeMismatch, std::to_string(shards.size()) + " shards for " +
                                              std::to_string(topo.size()) + " agents");
  }
  std::vector<AgentState> states(shards.size());
  for (std::size_t i = 0; i < shards.size(); ++i) {
    states[i].psi = Vector::Zero(static_cast<Eigen::Index>(shards[i].features()));
  }
  return states;
}

namespace {

template <class Lookup>
double agent_local_error(const Topology& topo, std::size_t i, const Lookup& lookup) {
  const auto nbrs = topo.neighbors(i);
  if (nbrs.empty()) return 0.0;
  const Vector& own = *lookup(i);
  double sum = 0.0;
  for (std::size_t j : nbrs) sum += (own - *lookup(j)).squaredNorm();
  return sum / static_cast<double>(nbrs.size());
}

}  // namespace

double consensus_error(std::span<const AgentState> states, const Topology& topo) {
  const auto& edges = topo.edges();
  if (edges.empty()) return 0.0;
  double sum = 0.0;
  for (auto [a, b] : edges) sum += (states[a].w - states[b].w).norm();
  return sum / static_cast<double>(edges.size());
}

std::vector<double> local_errors(std::span<const AgentState> states, const Topology& topo) {
  std::vector<double> eps(states.size());
  const auto lookup = [&](std::size_t j) { return &states[j].w; };
  for (std::size_t i = 0; i < states.size(); ++i) eps[i] = agent_local_error(topo, i, lookup);
  return eps;
}

IterationRecord run_round(std::vector<AgentState>& states, const Topology& topo, const AgentSolvers& solvers,
                          StepSchedule& schedule, std::size_t t, AccessLog* log) {
  const std::size_t n = states.size();
  if (n != topo.size() || n != solvers.problems.size()) {
    throw Error(ErrorKind::ShapeMismatch, "state, topology and solver counts differ");
  }
  if (t == 0) throw Error(ErrorKind::InvalidParams, "rounds are numbered from 1");
  const auto start = std::chrono::steady_clock::now();

  // Reads of agent-owned vectors go through here so locality can be audited.
  const auto reader = [&](std::size_t i, auto field) {
    return [&, i, field](std::size_t j) -> const Vector* {
      if (log != nullptr) log->reads.emplace_back(i, j);
      if (j >= n) return nullptr;
      const Vector& v = states[j].*field;
      return v.size() == 0 ? nullptr : &v;
    };
  };

  std::vector<LocalSolution> solutions;
  solutions.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const LocalProblem& lp = solvers.problems[i];
    const Vector dual = apply_laplacian_row(topo, i, reader(i, &AgentState::psi));
    const Vector d = transform_dual(lp, dual);
    const Support warm = states[i].s.size() == lp.p ? states[i].s : warm_start(lp, d, solvers.k);
    solutions.push_back(outer_approx(lp, d, solvers.k, warm, solvers.options));
  }

  const bool first_round = states.front().w.size() == 0;
  std::vector<double> eps_prev;
  if (!first_round) {
    for (const AgentState& a : states) eps_prev.push_back(a.local_error);
  }

  IterationRecord rec;
  rec.t = t;
  for (std::size_t i = 0; i < n; ++i) {
    states[i].w = std::move(solutions[i].w);
    states[i].s = std::move(solutions[i].s);
    states[i].local_objective = solutions[i].objective;
    rec.dual_value += solutions[i].objective;
  }

  std::vector<double> eps(n);
  for (std::size_t i = 0; i < n; ++i) {
    eps[i] = agent_local_error(topo, i, reader(i, &AgentState::w));
    states[i].local_error = eps[i];
  }
  rec.alpha = schedule.step(t, eps, eps_prev);

  std::vector<Vector> direction;
  direction.reserve(n);
  for (std::size_t i = 0; i < n; ++i) direction.push_back(apply_laplacian_row(topo, i, reader(i, &AgentState::w)));
  for (std::size_t i = 0; i < n; ++i) states[i].psi += rec.alpha * direction[i];

  rec.consensus_error = consensus_error(states, topo);
  rec.mean_local_error = std::accumulate(eps.begin(), eps.end(), 0.0) / static_cast<double>(n);
  rec.wall_time = std::chrono::steady_clock::now() - start;
  return rec;
}

RunResult run(const ShardedDataset& shards, const Topology& topo, const RunConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw Error(ErrorKind::InvalidParams, "tol must be positive");
  if (cfg.max_iter == 0) throw Error(ErrorKind::InvalidParams, "max_iter must be positive");
  const AgentSolvers solvers = make_solvers(shards, cfg.gamma, cfg.k);
  RunResult result;
  result.states = init_agents(shards, topo, cfg);
  result.topology_seed = topo.effective_seed();
  StepSchedule schedule = cfg.schedule;
  for (std::size_t t = 1; t <= cfg.max_iter; ++t) {
    result.trace.push_back(run_round(result.states, topo, solvers, schedule, t));
    if (result.trace.back().consensus_error <= cfg.tol) break;
  }
  return result;
}

RunResult run(const RunConfig& cfg, const Dataset& data) {
  const ShardedDataset shards = partition(data, cfg.n_agents, cfg.seed);
  const Topology topo = Topology::build(cfg.topology, cfg.n_agents, cfg.seed);
  return run(shards, topo, cfg);
}

}  // namespace distl0
