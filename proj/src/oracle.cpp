#include "distl0/oracle.hpp"

#include "distl0/errors.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <limits>
#include <string>

namespace distl0::oracle {

double binomial(std::size_t n, std::size_t r) {
  if (r > n) return 0.0;
  r = std::min(r, n - r);
  double out = 1.0;
  for (std::size_t i = 1; i <= r; ++i) out = out * static_cast<double>(n - r + i) / static_cast<double>(i);
  return std::round(out);
}

namespace {

void visit_from(std::size_t pos, std::size_t remaining, Support& s,
                const std::function<void(const Support&)>& visit) {
  const std::size_t p = s.size();
  if (remaining == 0) {
    visit(s);
    return;
  }
  if (p - pos < remaining) return;
  if (p - pos > remaining) visit_from(pos + 1, remaining, s, visit);  // bit 0 first
  s.bits[pos] = 1;
  visit_from(pos + 1, remaining - 1, s, visit);
  s.bits[pos] = 0;
}

void guard_size(std::size_t p, std::size_t k) {
  if (k == 0 || k > p) throw Error(ErrorKind::InvalidParams, "need 1 <= k <= p");
  if (binomial(p, k) > kMaxSupports) {
    throw Error(ErrorKind::TooLarge, "C(" + std::to_string(p) + "," + std::to_string(k) + ") supports exceed the enumeration cap");
  }
}

}  // namespace

void for_each_support(std::size_t p, std::size_t r, const std::function<void(const Support&)>& visit) {
  if (r > p) return;
  Support s(p);
  visit_from(0, r, s, visit);
}

LocalSolution enumerate_local(const LocalProblem& lp, const Vector& d, std::size_t k) {
  guard_size(lp.p, k);
  LocalSolution best;
  best.objective = std::numeric_limits<double>::infinity();
  for_each_support(lp.p, k, [&](const Support& s) {
    Vector w = solve_support(lp, d, s);
    const double obj = local_objective(lp, d, w);
    if (obj < best.objective) {
      best.objective = obj;
      best.s = s;
      best.w = std::move(w);
    }
  });
  return best;
}

double closed_form_c(const LocalProblem& lp, const Vector& d, const Support& s) {
  const auto p = static_cast<Eigen::Index>(lp.p);
  Vector weights(p);
  for (Eigen::Index i = 0; i < p; ++i) weights(i) = s.bits.at(static_cast<std::size_t>(i));
  const Matrix xs = lp.xbar * weights.asDiagonal();
  Matrix a = xs.transpose() * xs;
  a.diagonal().array() += 1.0 / lp.gamma;
  const Vector b = xs.transpose() * (lp.ybar - d);
  const Vector sol = Eigen::LDLT<Matrix>(a).solve(b);
  return 0.5 * (lp.ybar.squaredNorm() - b.dot(sol));
}

double centralized_objective(const Dataset& data, double gamma, const Vector& w) {
  return 0.5 * (data.y - data.x * w).squaredNorm() + w.squaredNorm() / gamma;
}

CentralizedSolution solve_centralized(const Dataset& data, double gamma, std::size_t k) {
  if (!(gamma > 0.0)) throw Error(ErrorKind::InvalidParams, "gamma must be positive");
  const std::size_t p = data.features();
  guard_size(p, k);

  const Matrix gram = data.x.transpose() * data.x;
  const Vector xty = data.x.transpose() * data.y;

  CentralizedSolution best;
  double best_score = std::numeric_limits<double>::infinity();
  for_each_support(p, k, [&](const Support& s) {
    const std::vector<std::size_t> idx = s.indices();
    const auto m = static_cast<Eigen::Index>(idx.size());
    Matrix a(m, m);
    Vector b(m);
    for (Eigen::Index r = 0; r < m; ++r) {
      b(r) = xty(static_cast<Eigen::Index>(idx[r]));
      for (Eigen::Index c = 0; c < m; ++c)
        a(r, c) = gram(static_cast<Eigen::Index>(idx[r]), static_cast<Eigen::Index>(idx[c]));
      a(r, r) += 2.0 / gamma;
    }
    const Vector ws = Eigen::LDLT<Matrix>(a).solve(b);
    // At the restricted optimum the objective is 1/2 (Y^T Y - b^T w_S); the
    // Y^T Y term is common to every support.
    const double score = -0.5 * b.dot(ws);
    if (score < best_score) {
      best_score = score;
      best.s = s;
      best.w = Vector::Zero(static_cast<Eigen::Index>(p));
      for (Eigen::Index r = 0; r < m; ++r) best.w(static_cast<Eigen::Index>(idx[r])) = ws(r);
    }
  });
  best.z = centralized_objective(data, gamma, best.w);
  return best;
}

}  // namespace distl0::oracle
