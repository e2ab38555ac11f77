#include "doctest.h"
#include "helpers.hpp"

#include "distl0/consensus.hpp"
#include "distl0/errors.hpp"
#include "distl0/oracle.hpp"

#include <cmath>
#include <set>

using namespace distl0;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no exception");
  return ErrorKind::Io;
}

std::vector<AgentState> with_w(std::vector<Vector> ws) {
  std::vector<AgentState> states(ws.size());
  for (std::size_t i = 0; i < ws.size(); ++i) states[i].w = ws[i];
  return states;
}

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

RunConfig config(std::size_t n, std::string_view topo, std::size_t k) {
  RunConfig cfg;
  cfg.n_agents = n;
  cfg.topology = TopologySpec::parse(topo);
  cfg.k = k;
  return cfg;
}

}  // namespace

TEST_CASE("step schedules") {
  StepSchedule h = StepSchedule::harmonic(1.0);
  CHECK(h.step(1, {}, {}) == 1.0);
  CHECK(h.step(4, {}, {}) == 0.25);

  const std::vector<double> prev{1.0, 1.0}, better{0.5, 2.0}, worse{1.0, 3.0};
  StepSchedule a = StepSchedule::adaptive(1.0, 0.5);
  CHECK(a.step(1, better, {}) == 1.0);
  CHECK(a.step(2, better, prev) == 1.0);
  CHECK(a.step(3, worse, prev) == 0.5);
  CHECK(a.step(4, worse, prev) == 0.25);
  CHECK(a.current() == 0.25);

  const StepSchedule parsed = StepSchedule::parse("adaptive:a0=0.05,kappa=0.8");
  CHECK(parsed.kind() == StepSchedule::Kind::adaptive);
  CHECK(parsed.alpha0() == 0.05);
  CHECK(parsed.kappa() == 0.8);
  CHECK(StepSchedule::parse(parsed.to_string()).kappa() == 0.8);
  CHECK(StepSchedule::parse("harmonic:a0=2").alpha0() == 2.0);
  for (auto bad : {"harmonic", "harmonic:a0=-1", "adaptive:a0=1", "adaptive:a0=1,kappa=1", "adaptive:a0=1,kappa=0",
                   "constant:a0=1", "harmonic:a0=x", "harmonic:b=1", "harmonic:a0"}) {
    CHECK(kind_of([&] { StepSchedule::parse(bad); }) == ErrorKind::InvalidParams);
  }
}

TEST_CASE("consensus and local errors") {
  const Topology path2 = Topology::build(TopologySpec::parse("path"), 2, 1);
  CHECK(consensus_error(with_w({vec({1, 0}), vec({0, 1})}), path2) == doctest::Approx(std::sqrt(2.0)));
  CHECK(consensus_error(with_w({vec({1, 2}), vec({1, 2})}), path2) == 0.0);

  const Topology path3 = Topology::build(TopologySpec::parse("path"), 3, 1);
  const auto states = with_w({vec({0, 0, 0}), vec({0, 0, 0}), vec({2, 0, 0})});
  const std::vector<double> eps = local_errors(states, path3);
  CHECK(eps[0] == 0.0);
  CHECK(eps[1] == 2.0);
  CHECK(eps[2] == 4.0);

  const Topology star = Topology::build(TopologySpec::parse("star"), 4, 1);
  const auto s4 = with_w({vec({0}), vec({1}), vec({2}), vec({3})});
  CHECK(local_errors(s4, star)[0] == doctest::Approx((1.0 + 4.0 + 9.0) / 3.0));
  CHECK(local_errors(s4, star)[2] == 4.0);

  const Topology single = Topology::build(TopologySpec::parse("clique"), 1, 1);
  CHECK(consensus_error(with_w({vec({5})}), single) == 0.0);
  CHECK(local_errors(with_w({vec({5})}), single)[0] == 0.0);
}

TEST_CASE("property: consensus error equals a direct double loop") {
  Rng rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    const Topology t = Topology::build(TopologySpec::parse("ws:K=4,beta=0.3"), 12, trial);
    std::vector<Vector> ws;
    for (int i = 0; i < 12; ++i) ws.push_back(testutil::random_vector(rng, 3));
    const auto states = with_w(ws);
    double sum = 0.0;
    std::size_t edges = 0;
    for (std::size_t i = 0; i < 12; ++i)
      for (std::size_t j = i + 1; j < 12; ++j)
        if (t.laplacian()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) != 0.0) {
          sum += (ws[i] - ws[j]).norm();
          ++edges;
        }
    CHECK(consensus_error(states, t) == doctest::Approx(sum / static_cast<double>(edges)).epsilon(1e-12));
    // sum_i deg(i) eps_i counts every edge twice
    const std::vector<double> eps = local_errors(states, t);
    double weighted = 0.0, direct = 0.0;
    for (std::size_t i = 0; i < 12; ++i) weighted += static_cast<double>(t.degree(i)) * eps[i];
    for (auto [a, b] : t.edges()) direct += 2.0 * (ws[a] - ws[b]).squaredNorm();
    CHECK(weighted == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("init_agents") {
  Rng rng(2);
  ShardedDataset shards;
  for (int i = 0; i < 3; ++i) shards.push_back(testutil::random_dataset(rng, 8, 4));
  const Topology t = Topology::build(TopologySpec::parse("path"), 3, 1);
  const auto states = init_agents(shards, t, config(3, "path", 2));
  REQUIRE(states.size() == 3);
  for (const auto& s : states) {
    CHECK(s.psi == Vector::Zero(4));
    CHECK(s.w.size() == 0);
  }
  CHECK(kind_of([&] { init_agents(ShardedDataset(shards.begin(), shards.begin() + 2), t, config(3, "path", 2)); }) ==
        ErrorKind::ShapeMismatch);
}

TEST_CASE("single agent: one round, centralized answer") {
  Rng rng(3);
  const Dataset data = testutil::random_dataset(rng, 30, 6);
  RunConfig cfg = config(1, "clique", 2);
  cfg.gamma = 0.8;
  const RunResult res = run(cfg, data);
  REQUIRE(res.trace.size() == 1);
  CHECK(res.trace[0].consensus_error == 0.0);
  CHECK(res.states[0].psi == Vector::Zero(6));
  const auto ref = oracle::solve_centralized(data, 0.8, 2);
  CHECK(res.states[0].s == ref.s);
  CHECK((res.states[0].w - ref.w).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(res.trace[0].dual_value == doctest::Approx(ref.z).epsilon(1e-10));
}

TEST_CASE("identical shards agree after one round") {
  Rng rng(4);
  const Dataset shard = testutil::random_dataset(rng, 12, 5);
  const ShardedDataset shards(4, shard);
  const Topology t = Topology::build(TopologySpec::parse("cycle"), 4, 1);
  const RunResult res = run(shards, t, config(4, "cycle", 2));
  REQUIRE(res.trace.size() == 1);
  CHECK(res.trace[0].consensus_error == 0.0);
}

TEST_CASE("round invariants: zero multiplier sum, locality, dual bound") {
  const auto [data, truth] = generate({.p = 4, .k = 2, .n = 120, .sigma = 0.1, .rho = 0.1, .seed = 5});
  const ShardedDataset shards = partition(data, 3, 5);
  const Topology t = Topology::build(TopologySpec::parse("path"), 3, 5);
  RunConfig cfg = config(3, "path", 2);
  const AgentSolvers solvers = make_solvers(shards, cfg.gamma, cfg.k);
  auto states = init_agents(shards, t, cfg);
  StepSchedule schedule = StepSchedule::harmonic(5.0);
  const double z = oracle::solve_centralized(data, cfg.gamma, 2).z;
  for (std::size_t round = 1; round <= 50; ++round) {
    AccessLog log;
    const IterationRecord rec = run_round(states, t, solvers, schedule, round, &log);
    CHECK(rec.t == round);
    CHECK(rec.alpha == 5.0 / static_cast<double>(round));
    CHECK(rec.consensus_error >= 0.0);
    CHECK(rec.dual_value <= z + 1e-8 * (1 + std::abs(z)));
    Vector total = Vector::Zero(4);
    for (const auto& s : states) total += s.psi;
    CHECK(total.cwiseAbs().maxCoeff() <= 1e-10);
    for (auto [reader, owner] : log.reads) {
      const auto nbrs = t.neighbors(reader);
      CHECK((reader == owner || std::find(nbrs.begin(), nbrs.end(), owner) != nbrs.end()));
    }
    for (const auto& s : states)
      for (std::size_t i = 0; i < 4; ++i)
        if (!s.s.test(i)) CHECK(s.w(static_cast<Eigen::Index>(i)) == 0.0);
  }
  CHECK(kind_of([&] { run_round(states, t, solvers, schedule, 0); }) == ErrorKind::InvalidParams);
}

TEST_CASE("consensus error at a common regressor is zero") {
  const Topology t = Topology::build(TopologySpec::parse("ws:K=4,beta=0.5"), 10, 2);
  const auto states = with_w(std::vector<Vector>(10, vec({0.3, 0, -1.2})));
  CHECK(consensus_error(states, t) == 0.0);
}

TEST_CASE("run is deterministic and respects T and tol") {
  const auto [data, truth] = generate({.p = 5, .k = 2, .n = 200, .seed = 6});
  RunConfig cfg = config(5, "ws:K=2,beta=0.2", 2);
  cfg.max_iter = 15;
  const RunResult a = run(cfg, data);
  const RunResult b = run(cfg, data);
  CHECK(a.trace.size() <= 15);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].consensus_error == b.trace[i].consensus_error);
    CHECK(a.trace[i].dual_value == b.trace[i].dual_value);
    CHECK(a.trace[i].alpha == b.trace[i].alpha);
  }
  RunConfig bad = cfg;
  bad.tol = 0.0;
  CHECK(kind_of([&] { run(bad, data); }) == ErrorKind::InvalidParams);
  bad = cfg;
  bad.k = 6;
  CHECK(kind_of([&] { run(bad, data); }) == ErrorKind::InvalidParams);
}

TEST_CASE("tiny path instance approaches the centralized solution") {
  const auto [data, truth] = generate({.p = 4, .k = 2, .n = 120, .sigma = 0.1, .rho = 0.1, .seed = 1});
  RunConfig cfg = config(3, "path", 2);
  cfg.gamma = 1.0;
  cfg.schedule = StepSchedule::harmonic(100.0);
  cfg.max_iter = 2000;
  cfg.tol = 1e-12;
  const RunResult res = run(cfg, data);
  const auto ref = oracle::solve_centralized(data, cfg.gamma, 2);
  Vector mean = Vector::Zero(4);
  for (const auto& s : res.states) mean += s.w / 3.0;
  CHECK((mean - ref.w).cwiseAbs().maxCoeff() < 1e-2);
  double prev = -std::numeric_limits<double>::infinity();
  for (const auto& rec : res.trace) {
    CHECK(rec.dual_value <= ref.z + 1e-8 * (1 + std::abs(ref.z)));
    prev = std::max(prev, rec.dual_value);
  }
  CHECK(prev >= ref.z - 1e-3 * (1 + std::abs(ref.z)));
}
