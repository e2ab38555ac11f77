#pragma once

#include "distl0/datagen.hpp"
#include "distl0/linalg.hpp"
#include "distl0/local_qip.hpp"
#include "distl0/rng.hpp"

#include <cmath>

namespace testutil {

using distl0::Matrix;
using distl0::Rng;
using distl0::Vector;

inline Matrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.normal();
  return m;
}

inline Vector random_vector(Rng& rng, Eigen::Index n, double scale = 1.0) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = scale * rng.normal();
  return v;
}

// G^T G + I
inline Matrix random_spd(Rng& rng, Eigen::Index n) {
  const Matrix g = random_matrix(rng, n, n);
  Matrix a = g.transpose() * g;
  a.diagonal().array() += 1.0;
  return a;
}

inline distl0::Dataset random_dataset(Rng& rng, Eigen::Index n, Eigen::Index p) {
  distl0::Dataset d;
  d.x = random_matrix(rng, n, p);
  d.y = random_vector(rng, n);
  return d;
}

// Local problem with a chosen upper-triangular Xbar, bypassing the data transform.
inline distl0::LocalProblem problem_from(const Matrix& xbar, const Vector& ybar, double gamma) {
  distl0::LocalProblem lp;
  lp.factor = distl0::CholeskyFactor(Matrix(xbar.transpose()));
  lp.xbar = xbar;
  lp.ybar = ybar;
  lp.gamma = gamma;
  lp.p = static_cast<std::size_t>(xbar.rows());
  return lp;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

}  // namespace testutil
