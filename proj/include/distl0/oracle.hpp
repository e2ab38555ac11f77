#pragma once

// Brute-force references for tests and the acceptance suite. Nothing here
// goes through the cutting-plane or branch-and-bound code: supports are
// enumerated and each one is solved as a ridge system.

#include "distl0/datagen.hpp"
#include "distl0/local_qip.hpp"

#include <cstddef>
#include <functional>

namespace distl0::oracle {

/// Enumeration is refused above this many supports.
inline constexpr double kMaxSupports = 1e6;

/// C(n, r) as a double.
double binomial(std::size_t n, std::size_t r);

/// Calls visit(s) for every s in {0,1}^p with exactly r ones, in increasing
/// lexicographic bit order.
void for_each_support(std::size_t p, std::size_t r, const std::function<void(const Support&)>& visit);

/// Best size-k support of the local problem: solve_support on each, scored by
/// local_objective. Ties go to the lexicographically smallest support.
/// Throws TooLarge when C(p, k) > kMaxSupports.
LocalSolution enumerate_local(const LocalProblem& lp, const Vector& d, std::size_t k);

/// c(s) from the primal closed form
///   2 c(s) = -(Ybar - d)^T Xbar_s (I/gbar + Xbar_s^T Xbar_s)^{-1} Xbar_s^T (Ybar - d) + Ybar^T Ybar
/// with Xbar_s = Xbar diag(s).
double closed_form_c(const LocalProblem& lp, const Vector& d, const Support& s);

struct CentralizedSolution {
  Vector w;
  double z = 0.0;
  Support s;
};

/// 1/2 ||Y - X w||^2 + (1/gamma) ||w||^2.
double centralized_objective(const Dataset& data, double gamma, const Vector& w);

/// Exact minimizer of centralized_objective over ||w||_0 <= k, by
/// enumeration of size-k supports on the raw pooled data. Throws TooLarge
/// when C(p, k) > kMaxSupports.
CentralizedSolution solve_centralized(const Dataset& data, double gamma, std::size_t k);

}  // namespace distl0::oracle
