#include "distl0/consensus.hpp"
#include "distl0/datagen.hpp"
#include "distl0/errors.hpp"
#include "distl0/io.hpp"
#include "distl0/local_qip.hpp"
#include "distl0/oracle.hpp"
#include "distl0/topology.hpp"
#include "distl0/trace.hpp"
#include "distl0/version.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace distl0;

namespace {

Dataset make_dataset(const Matrix& x, const Vector& y) {
  if (x.rows() != y.size()) throw Error(ErrorKind::DimensionMismatch, "X and y have different row counts");
  return Dataset{x, y};
}

py::dict solution_dict(const LocalSolution& sol) {
  py::dict d;
  d["support"] = sol.s.indices();
  d["w"] = sol.w;
  d["objective"] = sol.objective;
  d["cuts"] = sol.cuts_used;
  d["lower_bounds"] = sol.lower_bounds;
  d["upper_bounds"] = sol.upper_bounds;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Distributed exact L0-constrained least squares";
  m.attr("__version__") = kVersion;

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

  m.def(
      "generate",
      [](std::size_t p, std::size_t k, std::size_t n, double sigma, double rho, std::uint64_t seed) {
        auto [data, truth] = generate({p, k, n, sigma, rho, seed});
        return py::make_tuple(data.x, data.y, truth.w_star, truth.support);
      },
      py::arg("p"), py::arg("k"), py::arg("n"), py::arg("sigma") = 0.1, py::arg("rho") = 0.1, py::arg("seed") = 1,
      "Synthetic data; returns (X, y, w_star, support).");

  m.def(
      "read_dataset",
      [](const std::filesystem::path& dir) {
        const LoadedDataset ld = read_dataset(dir);
        return py::make_tuple(ld.data.x, ld.data.y);
      },
      py::arg("path"));

  m.def(
      "solve_local",
      [](const Matrix& x, const Vector& y, double gamma_bar, std::size_t k, std::optional<Vector> dual) {
        const Dataset data = make_dataset(x, y);
        const Vector D = dual.value_or(Vector::Zero(x.cols()));
        const auto [lp, d] = transform(data, gamma_bar, D);
        if (k == 0 || k > lp.p) throw Error(ErrorKind::InvalidParams, "need 1 <= k <= p");
        return solution_dict(outer_approx(lp, d, k, warm_start(lp, d, k)));
      },
      py::arg("X"), py::arg("y"), py::arg("gamma_bar"), py::arg("k"), py::arg("D") = py::none(),
      "Exact minimizer of 1/2||y - Xw||^2 + (1/gamma_bar)||w||^2 + <D, w> over ||w||_0 <= k.");

  m.def(
      "enumerate_local",
      [](const Matrix& x, const Vector& y, double gamma_bar, std::size_t k, std::optional<Vector> dual) {
        const Dataset data = make_dataset(x, y);
        const auto [lp, d] = transform(data, gamma_bar, dual.value_or(Vector::Zero(x.cols())));
        return solution_dict(oracle::enumerate_local(lp, d, k));
      },
      py::arg("X"), py::arg("y"), py::arg("gamma_bar"), py::arg("k"), py::arg("D") = py::none());

  m.def(
      "solve_centralized",
      [](const Matrix& x, const Vector& y, double gamma, std::size_t k) {
        const auto sol = oracle::solve_centralized(make_dataset(x, y), gamma, k);
        return py::make_tuple(sol.w, sol.z, sol.s.indices());
      },
      py::arg("X"), py::arg("y"), py::arg("gamma"), py::arg("k"), "Returns (w, z, support).");

  m.def(
      "laplacian",
      [](const std::string& topology, std::size_t n_agents, std::uint64_t seed) {
        return Topology::build(TopologySpec::parse(topology), n_agents, seed).laplacian();
      },
      py::arg("topology"), py::arg("n_agents"), py::arg("seed") = 1);

  m.def(
      "run",
      [](const Matrix& x, const Vector& y, std::size_t n_agents, const std::string& topology, double gamma,
         std::size_t k, std::size_t max_iter, double tol, const std::string& schedule, std::uint64_t seed) {
        RunConfig cfg;
        cfg.n_agents = n_agents;
        cfg.topology = TopologySpec::parse(topology);
        cfg.gamma = gamma;
        cfg.k = k;
        cfg.max_iter = max_iter;
        cfg.tol = tol;
        cfg.schedule = StepSchedule::parse(schedule);
        cfg.seed = seed;
        RunResult res;
        {
          py::gil_scoped_release release;
          res = run(cfg, make_dataset(x, y));
        }
        py::dict trace;
        std::vector<double> t, alpha, cons, dual, eps, ms;
        for (const auto& r : res.trace) {
          t.push_back(static_cast<double>(r.t));
          alpha.push_back(r.alpha);
          cons.push_back(r.consensus_error);
          dual.push_back(r.dual_value);
          eps.push_back(r.mean_local_error);
          ms.push_back(r.wall_time.count());
        }
        trace["t"] = t;
        trace["alpha"] = alpha;
        trace["consensus_error"] = cons;
        trace["dual_value"] = dual;
        trace["mean_local_error"] = eps;
        trace["wall_ms"] = ms;
        py::list w, supports;
        for (const auto& s : res.states) {
          w.append(s.w);
          supports.append(s.s.indices());
        }
        py::dict out;
        out["trace"] = trace;
        out["w"] = w;
        out["supports"] = supports;
        return out;
      },
      py::arg("X"), py::arg("y"), py::arg("n_agents"), py::arg("topology") = "clique", py::arg("gamma") = 0.01,
      py::arg("k") = 1, py::arg("max_iter") = 100, py::arg("tol") = 1e-5,
      py::arg("schedule") = "adaptive:a0=0.05,kappa=0.8", py::arg("seed") = 1);
}
