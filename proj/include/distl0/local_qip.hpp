#pragma once

// One agent's per-round problem
//
//   min_{||w||_0 <= k}  1/2 ||Y - X w||^2 + (1/gbar) ||w||^2 + <D, w>
//
// rewritten through an upper-triangular square root Xbar of I/gbar + X^T X
// as
//
//   min  1/2 ||Ybar - Xbar w||^2 + 1/(2 gbar) ||w||^2 + d^T Xbar w + const,
//
// with Xbar^T Ybar = X^T Y, Xbar^T d = D and const = 1/2 (Y^T Y - Ybar^T Ybar).
// For a fixed support s the inner minimum c(s) has the closed form
//
//   c(s) = 1/2 (Ybar - d)^T (I + gbar sum_i s_i K_i)^{-1} (Ybar - d)
//          - 1/2 d^T d + Ybar^T d,        K_i = Xbar_i Xbar_i^T,
//
// which is convex on the hull of the supports, and outer approximation
// minimizes it over {s : 1^T s <= k} with cuts from its gradient.

#include "distl0/datagen.hpp"
#include "distl0/linalg.hpp"
#include "distl0/master_bnb.hpp"
#include "distl0/support.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace distl0 {

struct LocalProblem {
  CholeskyFactor factor;  // lower factor L of I/gbar + X^T X; Xbar = L^T
  Matrix xbar;            // p x p, upper triangular
  Vector ybar;
  double gamma = 0.0;     // gbar
  double const_term = 0.0;
  std::size_t p = 0;
};

/// Builds the transformed quadratic for one agent's data. Throws
/// InvalidParams unless gamma_bar > 0.
LocalProblem make_local_problem(const Dataset& data, double gamma_bar);

/// d with Xbar^T d = D, so that d^T Xbar w = <D, w>.
Vector transform_dual(const LocalProblem& lp, const Vector& dual);

std::pair<LocalProblem, Vector> transform(const Dataset& data, double gamma_bar, const Vector& dual);

struct SupportValue {
  double value = 0.0;
  Vector alpha;  // (I + gbar sum_i s_i K_i)^{-1} (Ybar - d)
};

/// c(s) for s anywhere in [0,1]^p.
SupportValue c_of_s(const LocalProblem& lp, const Vector& d, std::span<const double> s);
SupportValue c_of_s(const LocalProblem& lp, const Vector& d, const Support& s);

/// Component i is -(gbar/2) (Xbar_i^T alpha(s))^2; always <= 0.
Vector grad_c(const LocalProblem& lp, const Vector& d, std::span<const double> s);
Vector grad_c(const LocalProblem& lp, const Vector& d, const Support& s);

/// Minimizer restricted to supp(s): (I/gbar + Xbar_S^T Xbar_S) w_S = Xbar_S^T (Ybar - d),
/// zero elsewhere.
Vector solve_support(const LocalProblem& lp, const Vector& d, const Support& s);

/// The transformed objective, const_term included. Equal to the original
/// objective in (X, Y, D) for every w.
double local_objective(const LocalProblem& lp, const Vector& d, const Vector& w);

/// Indicator of the k largest |w_i| of the dense minimizer; ties go to the
/// lower index.
Support warm_start(const LocalProblem& lp, const Vector& d, std::size_t k);

struct OuterApproxOptions {
  std::size_t max_cuts = 500;
  double gap_tol = 1e-9;  // stop when best_c - eta <= gap_tol (1 + |best_c|)
};

struct LocalSolution {
  Support s;
  Vector w;
  double objective = 0.0;  // const_term included
  std::size_t cuts_used = 0;
  std::size_t master_nodes = 0;
  std::vector<double> lower_bounds;  // eta after each master solve
  std::vector<double> upper_bounds;  // best c(s) seen after each cut
  double gap = 0.0;                  // final best_c - eta
};

/// Outer approximation of c over {s : 1^T s <= k}, starting from `warm`.
/// Throws CutBudgetExceeded if max_cuts cuts do not close the gap.
LocalSolution outer_approx(const LocalProblem& lp, const Vector& d, std::size_t k, const Support& warm,
                           const OuterApproxOptions& options = {});

}  // namespace distl0
