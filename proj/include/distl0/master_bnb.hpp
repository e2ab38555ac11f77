#pragma once

#include "distl0/linalg.hpp"
#include "distl0/support.hpp"

#include <cstddef>
#include <span>

namespace distl0 {

/// Affine under-estimator eta >= value + grad^T (s - anchor).
struct Cut {
  double value = 0.0;
  Vector grad;
  Support anchor;
};

struct MasterResult {
  Support s;
  double eta = 0.0;
  std::size_t nodes_explored = 0;
};

/// max over cuts of value_j + sum_i grad_ji (s_i - anchor_ji). The sum runs
/// over i in increasing order, so equal inputs give bit-equal results.
double evaluate_cuts(std::span<const Cut> cuts, const Support& s);

/// Exact minimizer of evaluate_cuts over {s in {0,1}^p : 1^T s <= k}.
///
/// Best-first branch and bound over the coordinates of s. A node fixes a
/// prefix of a static branching order (coordinates by decreasing largest
/// gradient magnitude across cuts); its bound is the max over cuts of the
/// cut evaluated with free coordinates at 0 plus the r most negative free
/// gradient entries, r being the remaining cardinality budget. Among
/// minimizers the lexicographically smallest s is returned.
///
/// Throws NoCuts for an empty cut list and DimensionMismatch when a cut is
/// not p-dimensional.
MasterResult solve_master(std::span<const Cut> cuts, std::size_t p, std::size_t k);

}  // namespace distl0
