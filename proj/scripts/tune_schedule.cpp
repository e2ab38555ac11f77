// Grid search behind the default step schedules.
//
//   harmonic: tiny path networks (N=3, p=4, k=2, 40 rows per agent, gamma=1),
//             5000 rounds, seeds 101..110.
//   adaptive: small-world networks (N=50, K=12, beta=0.25, n_i=10pk,
//             gamma=0.01), 100 rounds, (p,k) in {(5,1),(10,2)}, seeds 101..103.
//
// Seeds are disjoint from the ones the acceptance suite uses.

#include "distl0/consensus.hpp"
#include "distl0/oracle.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

using namespace distl0;

namespace {

void tune_harmonic() {
  std::printf("harmonic a0 | converged/10 | worst final gap (rel) | worst final consensus error\n");
  for (double a0 : {1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0, 200.0, 400.0}) {
    int ok = 0;
    double worst_gap = 0.0, worst_err = 0.0;
    for (std::uint64_t seed = 101; seed <= 110; ++seed) {
      const auto [data, truth] = generate({.p = 4, .k = 2, .n = 120, .sigma = 0.1, .rho = 0.1, .seed = seed});
      RunConfig cfg;
      cfg.n_agents = 3;
      cfg.topology = TopologySpec::parse("path");
      cfg.gamma = 1.0;
      cfg.k = 2;
      cfg.max_iter = 5000;
      cfg.tol = std::numeric_limits<double>::min();
      cfg.schedule = StepSchedule::harmonic(a0);
      cfg.seed = seed;
      const RunResult res = run(cfg, data);
      const auto ref = oracle::solve_centralized(data, cfg.gamma, cfg.k);
      const double gap = (ref.z - res.trace.back().dual_value) / (1.0 + std::abs(ref.z));
      const double err = res.trace.back().consensus_error;
      bool supports = true;
      for (const auto& st : res.states) supports = supports && st.s == ref.s;
      bool bounded = true;
      for (const auto& r : res.trace) bounded = bounded && r.dual_value <= ref.z + 1e-8 * (1.0 + std::abs(ref.z));
      if (gap <= 1e-3 && err < 1e-3 && supports && bounded) ++ok;
      worst_gap = std::max(worst_gap, std::isfinite(gap) ? gap : INFINITY);
      worst_err = std::max(worst_err, std::isfinite(err) ? err : INFINITY);
    }
    std::printf("%11g | %12d | %20.3e | %27.3e\n", a0, ok, worst_gap, worst_err);
    std::fflush(stdout);
  }
}

void tune_adaptive() {
  std::printf("\nadaptive a0 | kappa | mean log10(err(100)/err(1)) | runs with err(100) < err(1) | decreasing window means\n");
  const std::pair<std::size_t, std::size_t> sizes[] = {{5, 1}, {10, 2}};
  for (double a0 : {0.01, 0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0}) {
    for (double kappa : {0.5, 0.8, 0.9}) {
      double score = 0.0;
      int runs = 0, improved = 0, windows = 0, decreasing = 0;
      for (auto [p, k] : sizes) {
        for (std::uint64_t seed = 101; seed <= 103; ++seed) {
          const auto [data, truth] =
              generate({.p = p, .k = k, .n = 50 * 10 * p * k, .sigma = 0.1, .rho = 0.1, .seed = seed});
          RunConfig cfg;
          cfg.n_agents = 50;
          cfg.topology = TopologySpec::parse("ws:K=12,beta=0.25");
          cfg.gamma = 0.01;
          cfg.k = k;
          cfg.max_iter = 100;
          cfg.schedule = StepSchedule::adaptive(a0, kappa);
          cfg.seed = seed;
          const RunResult res = run(cfg, data);
          const double first = res.trace.front().consensus_error;
          const double last = std::max(res.trace.back().consensus_error, 1e-300);
          score += std::log10(last / first);
          ++runs;
          if (last < first) ++improved;
          std::vector<double> block(10, 0.0);
          for (std::size_t t = 0; t < 100; ++t)
            block[t / 10] += res.trace[std::min(t, res.trace.size() - 1)].consensus_error / 10.0;
          for (std::size_t w = 1; w < 10; ++w, ++windows)
            if (block[w] <= block[w - 1]) ++decreasing;
        }
      }
      std::printf("%11g | %5g | %27.3f | %27d/%d | %d/%d\n", a0, kappa, score / runs, improved, runs, decreasing,
                  windows);
      std::fflush(stdout);
    }
  }
}

}  // namespace

int main() {
  tune_harmonic();
  tune_adaptive();
}
