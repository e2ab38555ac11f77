#include "distl0/local_qip.hpp"

#include "distl0/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <string>

namespace distl0 {

namespace {

void require_dims(const LocalProblem& lp, Eigen::Index n, const char* what) {
  if (static_cast<std::size_t>(n) != lp.p) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + " has length " + std::to_string(n) +
                                                  ", expected p=" + std::to_string(lp.p));
  }
}

Matrix woodbury_system(const LocalProblem& lp, std::span<const double> s) {
  require_dims(lp, static_cast<Eigen::Index>(s.size()), "s");
  const auto p = static_cast<Eigen::Index>(lp.p);
  Vector weights(p);
  for (Eigen::Index i = 0; i < p; ++i) {
    const double si = s[static_cast<std::size_t>(i)];
    if (!(si >= 0.0 && si <= 1.0)) throw Error(ErrorKind::InvalidParams, "s entries must lie in [0, 1]");
    weights(i) = si;
  }
  Matrix m = lp.gamma * (lp.xbar * weights.asDiagonal() * lp.xbar.transpose());
  m.diagonal().array() += 1.0;
  return m;
}

}  // namespace

LocalProblem make_local_problem(const Dataset& data, double gamma_bar) {
  if (!(gamma_bar > 0.0) || !std::isfinite(gamma_bar)) {
    throw Error(ErrorKind::InvalidParams, "gamma_bar must be positive and finite");
  }
  if (data.x.rows() != data.y.size()) throw Error(ErrorKind::DimensionMismatch, "X and Y row counts differ");
  LocalProblem lp;
  lp.p = data.features();
  lp.gamma = gamma_bar;
  Matrix gram = data.x.transpose() * data.x;
  gram.diagonal().array() += 1.0 / gamma_bar;
  lp.factor = cholesky(gram);
  lp.xbar = lp.factor.upper();
  const Vector xty = data.x.transpose() * data.y;
  lp.ybar = solve_lower_transposed(lp.factor, xty);
  lp.const_term = 0.5 * (data.y.squaredNorm() - lp.ybar.squaredNorm());
  return lp;
}

Vector transform_dual(const LocalProblem& lp, const Vector& dual) {
  require_dims(lp, dual.size(), "D");
  return solve_lower_transposed(lp.factor, dual);
}

std::pair<LocalProblem, Vector> transform(const Dataset& data, double gamma_bar, const Vector& dual) {
  LocalProblem lp = make_local_problem(data, gamma_bar);
  Vector d = transform_dual(lp, dual);
  return {std::move(lp), std::move(d)};
}

SupportValue c_of_s(const LocalProblem& lp, const Vector& d, std::span<const double> s) {
  require_dims(lp, d.size(), "d");
  const Vector r = lp.ybar - d;
  SupportValue out;
  out.alpha = solve_spd(cholesky(woodbury_system(lp, s)), r);
  out.value = 0.5 * r.dot(out.alpha) - 0.5 * d.squaredNorm() + lp.ybar.dot(d);
  return out;
}

SupportValue c_of_s(const LocalProblem& lp, const Vector& d, const Support& s) {
  const std::vector<double> weights = s.as_weights();
  return c_of_s(lp, d, weights);
}

Vector grad_c(const LocalProblem& lp, const Vector& d, std::span<const double> s) {
  const Vector alpha = c_of_s(lp, d, s).alpha;
  const Vector proj = lp.xbar.transpose() * alpha;
  return (-0.5 * lp.gamma) * proj.array().square().matrix();
}

Vector grad_c(const LocalProblem& lp, const Vector& d, const Support& s) {
  const std::vector<double> weights = s.as_weights();
  return grad_c(lp, d, weights);
}

Vector solve_support(const LocalProblem& lp, const Vector& d, const Support& s) {
  require_dims(lp, d.size(), "d");
  require_dims(lp, static_cast<Eigen::Index>(s.size()), "s");
  const std::vector<std::size_t> idx = s.indices();
  Vector w = Vector::Zero(static_cast<Eigen::Index>(lp.p));
  if (idx.empty()) return w;

  const auto m = static_cast<Eigen::Index>(idx.size());
  Matrix cols(static_cast<Eigen::Index>(lp.p), m);
  for (Eigen::Index c = 0; c < m; ++c) cols.col(c) = lp.xbar.col(static_cast<Eigen::Index>(idx[c]));
  Matrix system = cols.transpose() * cols;
  system.diagonal().array() += 1.0 / lp.gamma;
  const Vector rhs = cols.transpose() * (lp.ybar - d);
  const Vector ws = solve_spd(cholesky(system), rhs);
  for (Eigen::Index c = 0; c < m; ++c) w(static_cast<Eigen::Index>(idx[c])) = ws(c);
  return w;
}

double local_objective(const LocalProblem& lp, const Vector& d, const Vector& w) {
  require_dims(lp, w.size(), "w");
  require_dims(lp, d.size(), "d");
  const Vector xw = lp.xbar * w;
  return 0.5 * (lp.ybar - xw).squaredNorm() + w.squaredNorm() / (2.0 * lp.gamma) + d.dot(xw) + lp.const_term;
}

Support warm_start(const LocalProblem& lp, const Vector& d, std::size_t k) {
  if (k == 0 || k > lp.p) throw Error(ErrorKind::InvalidParams, "warm start needs 1 <= k <= p");
  const Vector dense = solve_support(lp, d, Support::all(lp.p));
  std::vector<std::size_t> order(lp.p);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(dense(static_cast<Eigen::Index>(a))) > std::abs(dense(static_cast<Eigen::Index>(b)));
  });
  Support s(lp.p);
  for (std::size_t t = 0; t < k; ++t) s.bits[order[t]] = 1;
  return s;
}

LocalSolution outer_approx(const LocalProblem& lp, const Vector& d, std::size_t k, const Support& warm,
                           const OuterApproxOptions& options) {
  require_dims(lp, d.size(), "d");
  require_dims(lp, static_cast<Eigen::Index>(warm.size()), "warm start");
  if (k == 0 || k > lp.p) throw Error(ErrorKind::InvalidParams, "need 1 <= k <= p");
  if (warm.count() > k) throw Error(ErrorKind::InvalidParams, "warm start violates the cardinality bound");

  LocalSolution out;
  std::vector<Cut> cuts;
  std::set<Support> cut_at;
  Support best;
  double best_value = std::numeric_limits<double>::infinity();
  Support current = warm;

  for (;;) {
    if (cuts.size() >= options.max_cuts) {
      throw Error(ErrorKind::CutBudgetExceeded,
                  std::to_string(options.max_cuts) + " cuts did not close the gap");
    }
    const SupportValue sv = c_of_s(lp, d, current);
    const Vector proj = lp.xbar.transpose() * sv.alpha;
    Vector grad = (-0.5 * lp.gamma) * proj.array().square().matrix();
    if (sv.value < best_value || (sv.value == best_value && current < best)) {
      best_value = sv.value;
      best = current;
    }
    out.upper_bounds.push_back(best_value);
    cut_at.insert(current);
    cuts.push_back(Cut{sv.value, std::move(grad), current});

    const MasterResult master = solve_master(cuts, lp.p, k);
    out.master_nodes += master.nodes_explored;
    out.lower_bounds.push_back(master.eta);
    out.gap = best_value - master.eta;
    if (out.gap <= options.gap_tol * (1.0 + std::abs(best_value))) break;
    // A support that already carries a cut has eta >= its c value, so the
    // gap is closed there; stop on the incumbent.
    if (cut_at.contains(master.s)) break;
    current = master.s;
  }

  out.cuts_used = cuts.size();
  out.s = best;
  out.w = solve_support(lp, d, best);
  out.objective = best_value + lp.const_term;
  return out;
}

}  // namespace distl0
