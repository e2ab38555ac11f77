// distl0 command line: gen, run, solve-local, oracle, plot, sweep.
// Exit codes: 0 ok, 1 numerical or internal failure, 2 usage or validation error.

#include "distl0/consensus.hpp"
#include "distl0/errors.hpp"
#include "distl0/io.hpp"
#include "distl0/oracle.hpp"
#include "distl0/plot.hpp"
#include "distl0/rng.hpp"
#include "distl0/trace.hpp"
#include "distl0/version.hpp"

#include "CLI11.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace distl0;
namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParams:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::TooFewRows:
    case ErrorKind::ShapeMismatch:
    case ErrorKind::TooLarge:
    case ErrorKind::Io:
      return kUsage;
    default:
      return kFailure;
  }
}

std::string join_vector(const Vector& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ',';
    out += format_double(v(i));
  }
  return out;
}

std::string join_indices(const std::vector<std::size_t>& idx) {
  std::string out;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(idx[i]);
  }
  return out;
}

std::string invocation(int argc, char** argv) {
  std::string out = "distl0";
  for (int i = 1; i < argc; ++i) {
    out += ' ';
    out += argv[i];
  }
  return out;
}

struct GenArgs {
  std::size_t p = 0, k = 0, n = 0;
  double sigma = 0.1, rho = 0.1;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  const auto [data, truth] = generate({a.p, a.k, a.n, a.sigma, a.rho, a.seed});
  write_dataset(a.out, data, make_meta(data, truth));
  std::cout << "wrote " << a.n << "x" << a.p << " dataset to " << a.out << " (support " << join_indices(truth.support)
            << ")\n";
  return kOk;
}

struct RunArgs {
  std::string data;
  std::size_t agents = 1;
  std::string topology = "clique";
  double gamma = 0.01;
  std::optional<std::size_t> k;
  std::size_t T = 100;
  double tol = 1e-5;
  std::string schedule = "adaptive:a0=0.05,kappa=0.8";
  std::uint64_t seed = 1;
  std::string out_csv;
  std::string out_svg;
};

int cmd_run(const RunArgs& a, const std::string& command_line) {
  const LoadedDataset loaded = read_dataset(a.data);
  RunConfig cfg;
  cfg.n_agents = a.agents;
  cfg.topology = TopologySpec::parse(a.topology);
  cfg.gamma = a.gamma;
  if (a.k) {
    cfg.k = *a.k;
  } else if (loaded.meta) {
    cfg.k = loaded.meta->k;
  } else {
    throw Error(ErrorKind::InvalidParams, "--k is required when the dataset has no meta.json");
  }
  cfg.max_iter = a.T;
  cfg.tol = a.tol;
  cfg.schedule = StepSchedule::parse(a.schedule);
  cfg.seed = a.seed;

  const RunResult res = run(cfg, loaded.data);
  const std::vector<std::string> comments{command_line, std::string("distl0 ") + kVersion,
                                          "topology_seed " + std::to_string(res.topology_seed)};
  if (!a.out_csv.empty()) write_trace(a.out_csv, res.trace, comments);
  else std::cout << format_trace(res.trace, comments);
  if (!a.out_svg.empty()) {
    Series s;
    s.label = cfg.topology.to_string() + " N=" + std::to_string(cfg.n_agents);
    for (const auto& r : res.trace) {
      s.x.push_back(static_cast<double>(r.t));
      s.y.push_back(r.consensus_error);
    }
    PlotOptions opt;
    opt.log_y = true;
    opt.y_label = "consensus_error";
    write_file_atomic(a.out_svg, render_svg(std::span<const Series>(&s, 1), opt));
  }
  const IterationRecord& last = res.trace.back();
  std::cerr << "rounds " << res.trace.size() << ", consensus_error " << format_double(last.consensus_error)
            << ", dual_value " << format_double(last.dual_value) << "\n";
  return kOk;
}

struct SolveLocalArgs {
  std::string data;
  double gamma = 0.01;
  std::size_t k = 0;
  std::string d = "zero";
};

int cmd_solve_local(const SolveLocalArgs& a) {
  const LoadedDataset loaded = read_dataset(a.data);
  const std::size_t p = loaded.data.features();
  Vector dual = Vector::Zero(static_cast<Eigen::Index>(p));
  if (a.d != "zero") {
    const std::string text = fs::is_regular_file(a.d) ? read_file(a.d) : a.d;
    const std::vector<double> values = parse_double_list(text);
    if (values.size() != p) {
      throw Error(ErrorKind::InvalidParams,
                  "--d has " + std::to_string(values.size()) + " entries, expected p=" + std::to_string(p));
    }
    for (std::size_t i = 0; i < p; ++i) dual(static_cast<Eigen::Index>(i)) = values[i];
    if (!dual.allFinite()) throw Error(ErrorKind::InvalidParams, "--d has non-finite entries");
  }
  const auto [lp, d] = transform(loaded.data, a.gamma, dual);
  if (a.k == 0 || a.k > p) throw Error(ErrorKind::InvalidParams, "need 1 <= k <= p");
  const LocalSolution sol = outer_approx(lp, d, a.k, warm_start(lp, d, a.k));
  std::cout << "support " << join_indices(sol.s.indices()) << "\n"
            << "s " << sol.s.to_string() << "\n"
            << "objective " << format_double(sol.objective) << "\n"
            << "cuts " << sol.cuts_used << "\n"
            << "w " << join_vector(sol.w) << "\n";
  return kOk;
}

struct OracleArgs {
  std::size_t cases = 20;
  std::uint64_t seed = 1;
  double gamma_error = 1.0;
};

// Local: outer_approx against enumeration on random instances.
// Network: N=3 path runs against the pooled oracle; gamma_error scales the
// gamma handed to the oracle, so anything other than 1 should fail.
int cmd_oracle(const OracleArgs& a) {
  if (a.cases == 0) throw Error(ErrorKind::InvalidParams, "--cases must be positive");
  if (!(a.gamma_error > 0.0)) throw Error(ErrorKind::InvalidParams, "--inject-gamma-error must be positive");
  Rng rng(a.seed);
  std::size_t failures = 0;
  for (std::size_t c = 0; c < a.cases; ++c) {
    const std::size_t p = 3 + rng.below(6);
    const std::size_t k = 1 + rng.below(p);
    const std::size_t n = p + 2 + rng.below(20);
    const double gbar = std::pow(10.0, rng.uniform(-1.0, 1.0));
    Dataset data;
    data.x.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
    data.y.resize(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < data.x.rows(); ++i) {
      for (Eigen::Index j = 0; j < data.x.cols(); ++j) data.x(i, j) = rng.normal();
      data.y(i) = rng.normal();
    }
    Vector dual(static_cast<Eigen::Index>(p));
    for (Eigen::Index j = 0; j < dual.size(); ++j) dual(j) = rng.normal();
    const auto [lp, d] = transform(data, gbar, dual);
    const LocalSolution sol = outer_approx(lp, d, k, warm_start(lp, d, k));
    const LocalSolution ref = oracle::enumerate_local(lp, d, k);
    const double rel = std::abs(sol.objective - ref.objective) / std::max(1.0, std::abs(ref.objective));
    const bool ok = sol.s == ref.s && rel <= 1e-8;
    if (!ok) ++failures;
    std::printf("local   case %zu p=%zu k=%zu: %s (objective rel diff %.3e)\n", c, p, k, ok ? "agree" : "DISAGREE", rel);
  }

  const std::size_t network_cases = std::min<std::size_t>(a.cases, 3);
  for (std::size_t c = 0; c < network_cases; ++c) {
    const std::uint64_t seed = a.seed + c;
    const auto [data, truth] = generate({.p = 4, .k = 2, .n = 120, .sigma = 0.1, .rho = 0.1, .seed = seed});
    RunConfig cfg;
    cfg.n_agents = 3;
    cfg.topology = TopologySpec::parse("path");
    cfg.gamma = 1.0;
    cfg.k = 2;
    cfg.max_iter = 2000;
    cfg.tol = 1e-9;
    cfg.schedule = StepSchedule::harmonic(100.0);
    cfg.seed = seed;
    const RunResult res = run(cfg, data);
    const auto ref = oracle::solve_centralized(data, cfg.gamma * a.gamma_error, cfg.k);
    const double scale = 1.0 + std::abs(ref.z);
    bool bounded = true;
    for (const auto& r : res.trace) bounded = bounded && r.dual_value <= ref.z + 1e-8 * scale;
    const double gap = (ref.z - res.trace.back().dual_value) / scale;
    bool supports = true;
    for (const auto& st : res.states) supports = supports && st.s == ref.s;
    const bool ok = bounded && gap <= 1e-3 && supports;
    if (!ok) ++failures;
    std::printf("network case %zu: %s (rounds %zu, relative dual gap %.3e, consensus %.3e)\n", c,
                ok ? "agree" : "DISAGREE", res.trace.size(), gap, res.trace.back().consensus_error);
  }
  std::printf("%zu of %zu checks failed\n", failures, a.cases + network_cases);
  return failures == 0 ? kOk : kFailure;
}

struct PlotArgs {
  std::vector<std::string> csv;
  std::string y = "consensus_error";
  bool logy = false;
  std::string out;
  std::string title;
};

int cmd_plot(const PlotArgs& a) {
  std::vector<Series> series;
  for (const std::string& path : a.csv) {
    const TraceTable table = read_trace(path);
    Series s;
    s.label = fs::path(path).stem().string();
    s.x = table.column("t");
    s.y = table.column(a.y);
    series.push_back(std::move(s));
  }
  PlotOptions opt;
  opt.log_y = a.logy;
  opt.y_label = a.y;
  opt.title = a.title;
  write_file_atomic(a.out, render_svg(series, opt));
  return kOk;
}


struct SweepArgs {
  int figure = 1;
  std::string out;
  std::size_t seeds = 5;
  std::size_t T = 100;
  double tol = 1e-5;
  double gamma = 0.01;
  std::string schedule = "adaptive:a0=0.05,kappa=0.8";
};

// Two-sided 95% Student t quantiles for 1..30 degrees of freedom.
double t_quantile(std::size_t dof) {
  static constexpr std::array<double, 30> table{
      12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228, 2.201, 2.179, 2.160, 2.145, 2.131,
      2.120,  2.110, 2.101, 2.093, 2.086, 2.080, 2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042};
  if (dof == 0) return 0.0;
  return dof <= table.size() ? table[dof - 1] : 1.960;
}

struct SweepPoint {
  std::string label;
  std::size_t p, k, n, agents;
  std::string topology;
  std::vector<std::uint64_t> seeds;  // one dataset per seed
};

// Figure 1: WS(K=12, beta=0.25), N=50, (p, k) in {(5,1), (10,2), (20,3)}, n_i = 10pk.
// Figure 2: p=18, k=3, N=50 on clique/star/cycle/ws, n_i = 10pk.
// Figure 3: one 2000-row dataset (p=18, k=3) split over paths of N in {5, 10, 25, 50}.
std::vector<SweepPoint> sweep_points(int figure, std::size_t seeds) {
  std::vector<std::uint64_t> all;
  for (std::uint64_t s = 1; s <= seeds; ++s) all.push_back(s);
  std::vector<SweepPoint> pts;
  if (figure == 1) {
    for (auto [p, k] : {std::pair<std::size_t, std::size_t>{5, 1}, {10, 2}, {20, 3}})
      pts.push_back({"p" + std::to_string(p), p, k, 50 * 10 * p * k, 50, "ws:K=12,beta=0.25", all});
  } else if (figure == 2) {
    for (const char* topo : {"clique", "star", "cycle", "ws:K=12,beta=0.25"}) {
      const std::string name = topo[0] == 'w' ? "ws" : topo;
      pts.push_back({name, 18, 3, 50 * 10 * 18 * 3, 50, topo, all});
    }
  } else if (figure == 3) {
    for (std::size_t n : {5, 10, 25, 50}) pts.push_back({"path" + std::to_string(n), 18, 3, 2000, n, "path", {1}});
  } else {
    throw Error(ErrorKind::InvalidParams, "--figure must be 1, 2 or 3");
  }
  return pts;
}

int cmd_sweep(const SweepArgs& a, const std::string& command_line) {
  if (a.seeds == 0) throw Error(ErrorKind::InvalidParams, "--seeds must be positive");
  if (a.T == 0) throw Error(ErrorKind::InvalidParams, "--T must be positive");
  const std::vector<SweepPoint> points = sweep_points(a.figure, a.seeds);
  const StepSchedule schedule = StepSchedule::parse(a.schedule);
  const fs::path out(a.out);
  fs::create_directories(out / "runs");
  const std::vector<std::string> comments{command_line, std::string("distl0 ") + kVersion};

  std::vector<Series> series;
  std::vector<std::vector<double>> columns;
  std::string header = "t";
  for (const SweepPoint& pt : points) {
    std::vector<std::vector<double>> curves;
    for (std::uint64_t seed : pt.seeds) {
      const auto [data, truth] = generate({.p = pt.p, .k = pt.k, .n = pt.n, .seed = seed});
      RunConfig cfg;
      cfg.n_agents = pt.agents;
      cfg.topology = TopologySpec::parse(pt.topology);
      cfg.gamma = a.gamma;
      cfg.k = pt.k;
      cfg.max_iter = a.T;
      cfg.tol = a.tol;
      cfg.schedule = schedule;
      cfg.seed = seed;
      const RunResult res = run(cfg, data);
      write_trace(out / "runs" / (pt.label + "_seed" + std::to_string(seed) + ".csv"), res.trace, comments);
      std::vector<double> e;
      for (const auto& r : res.trace) e.push_back(r.consensus_error);
      e.resize(a.T, e.back());  // a run that met tol keeps its last value
      curves.push_back(std::move(e));
      std::cerr << pt.label << " seed " << seed << ": " << res.trace.size() << " rounds, consensus_error "
                << format_double(res.trace.back().consensus_error) << "\n";
    }
    const double m = static_cast<double>(curves.size());
    std::vector<double> mean(a.T, 0.0), half(a.T, 0.0);
    for (std::size_t t = 0; t < a.T; ++t) {
      for (const auto& c : curves) mean[t] += c[t] / m;
      if (curves.size() > 1) {
        double ss = 0.0;
        for (const auto& c : curves) ss += (c[t] - mean[t]) * (c[t] - mean[t]);
        half[t] = t_quantile(curves.size() - 1) * std::sqrt(ss / (m - 1.0) / m);
      }
    }
    header += "," + pt.label + "_mean," + pt.label + "_ci95";
    columns.push_back(mean);
    columns.push_back(half);
    Series s;
    s.label = pt.label;
    for (std::size_t t = 0; t < a.T; ++t) s.x.push_back(static_cast<double>(t + 1));
    s.y = mean;
    series.push_back(std::move(s));
  }

  std::string csv;
  for (const auto& c : comments) csv += "# " + c + "\n";
  csv += header + "\n";
  for (std::size_t t = 0; t < a.T; ++t) {
    csv += std::to_string(t + 1);
    for (const auto& col : columns) csv += "," + format_double(col[t]);
    csv += "\n";
  }
  write_file_atomic(out / "summary.csv", csv);
  PlotOptions opt;
  opt.log_y = true;
  opt.y_label = "consensus_error";
  opt.title = "figure " + std::to_string(a.figure);
  write_file_atomic(out / "figure.svg", render_svg(series, opt));
  std::cout << "wrote " << (out / "summary.csv").string() << " and " << (out / "figure.svg").string() << "\n";
  return kOk;
}
}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed exact L0-constrained regression simulator"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic sparse regression dataset");
  gen_cmd->add_option("--p", gen.p, "Number of features")->required();
  gen_cmd->add_option("--k", gen.k, "Support size of the true regressor")->required();
  gen_cmd->add_option("--n", gen.n, "Number of rows")->required();
  gen_cmd->add_option("--sigma", gen.sigma, "Noise standard deviation")->capture_default_str();
  gen_cmd->add_option("--rho", gen.rho, "Feature correlation rho^|i-j|")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output directory")->required();

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Run distributed dual ascent and write the per-round trace");
  run_cmd->add_option("--data", run_args.data, "Dataset directory")->required();
  run_cmd->add_option("--agents", run_args.agents, "Number of agents N")->capture_default_str();
  run_cmd->add_option("--topology", run_args.topology, "clique|star|cycle|path|ws:K=<int>,beta=<float>")
      ->capture_default_str();
  run_cmd->add_option("--gamma", run_args.gamma, "Pooled ridge weight gamma")->capture_default_str();
  run_cmd->add_option("--k", run_args.k, "Sparsity bound (defaults to the dataset's k)");
  run_cmd->add_option("--T", run_args.T, "Maximum rounds")->capture_default_str();
  run_cmd->add_option("--tol", run_args.tol, "Stop once the consensus error is at most this")->capture_default_str();
  run_cmd->add_option("--schedule", run_args.schedule, "harmonic:a0=<f> | adaptive:a0=<f>,kappa=<f>")
      ->capture_default_str();
  run_cmd->add_option("--seed", run_args.seed, "Partition and topology seed")->capture_default_str();
  run_cmd->add_option("--out-csv", run_args.out_csv, "Trace CSV path (stdout when omitted)");
  run_cmd->add_option("--out-svg", run_args.out_svg, "Optional consensus-error plot");

  SolveLocalArgs solve;
  auto* solve_cmd = app.add_subcommand("solve-local", "Solve one agent's sparse problem on a whole dataset");
  solve_cmd->add_option("--data", solve.data, "Dataset directory")->required();
  solve_cmd->add_option("--gamma", solve.gamma, "Local ridge weight gbar")->capture_default_str();
  solve_cmd->add_option("--k", solve.k, "Sparsity bound")->required();
  solve_cmd->add_option("--d", solve.d, "Linear term D: 'zero', a comma list, or a file")->capture_default_str();

  OracleArgs oracle_args;
  auto* oracle_cmd = app.add_subcommand("oracle", "Check the solvers against brute-force references");
  oracle_cmd->add_option("--cases", oracle_args.cases, "Number of local cases")->capture_default_str();
  oracle_cmd->add_option("--seed", oracle_args.seed, "Battery seed")->capture_default_str();
  oracle_cmd->add_option("--inject-gamma-error", oracle_args.gamma_error,
                         "Multiply the oracle's gamma by this factor (self-test; != 1 must fail)")
      ->capture_default_str();

  PlotArgs plot;
  auto* plot_cmd = app.add_subcommand("plot", "Plot trace columns as an SVG line chart");
  plot_cmd->add_option("--csv", plot.csv, "Trace CSVs, comma separated")->required()->delimiter(',');
  plot_cmd->add_option("--y", plot.y, "Column to plot")->capture_default_str();
  plot_cmd->add_flag("--logy", plot.logy, "Logarithmic y axis");
  plot_cmd->add_option("--out", plot.out, "SVG output path")->required();
  plot_cmd->add_option("--title", plot.title, "Chart title");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run one of the three convergence studies over seeds");
  sweep_cmd->add_option("--figure", sweep.figure, "1: feature count, 2: topology, 3: path length")->required();
  sweep_cmd->add_option("--out", sweep.out, "Output directory")->required();
  sweep_cmd->add_option("--seeds", sweep.seeds, "Datasets per setting (figure 3 always uses one)")
      ->capture_default_str();
  sweep_cmd->add_option("--T", sweep.T, "Maximum rounds")->capture_default_str();
  sweep_cmd->add_option("--tol", sweep.tol, "Stop once the consensus error is at most this")->capture_default_str();
  sweep_cmd->add_option("--gamma", sweep.gamma, "Pooled ridge weight gamma")->capture_default_str();
  sweep_cmd->add_option("--schedule", sweep.schedule, "Step schedule")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen);
    if (*run_cmd) return cmd_run(run_args, invocation(argc, argv));
    if (*solve_cmd) return cmd_solve_local(solve);
    if (*oracle_cmd) return cmd_oracle(oracle_args);
    if (*plot_cmd) return cmd_plot(plot);
    if (*sweep_cmd) return cmd_sweep(sweep, invocation(argc, argv));
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
