#include "distl0/linalg.hpp"

#include "distl0/errors.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <limits>
#include <string>

namespace distl0 {

CholeskyFactor::CholeskyFactor(Matrix lower) : lower_(std::move(lower)) {}

Matrix CholeskyFactor::reconstruct() const { return lower_ * lower_.transpose(); }

CholeskyFactor cholesky(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "cholesky needs a square matrix, got " +
                                                  std::to_string(a.rows()) + "x" +
                                                  std::to_string(a.cols()));
  }
  const Eigen::Index n = a.rows();
  if (n == 0) return CholeskyFactor(Matrix(0, 0));
  if (!a.allFinite()) throw Error(ErrorKind::InvalidParams, "cholesky input has non-finite entries");

  const double scale = a.cwiseAbs().maxCoeff();
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale) {
    throw Error(ErrorKind::InvalidParams, "cholesky input is not symmetric");
  }

  const double max_diag = a.diagonal().maxCoeff();
  if (!(max_diag > 0.0)) throw Error(ErrorKind::NotSPD, "non-positive diagonal");

  Eigen::LLT<Matrix, Eigen::Lower> llt(a);
  if (llt.info() != Eigen::Success) throw Error(ErrorKind::NotSPD, "factorization broke down");

  Matrix lower = llt.matrixL();
  const double floor =
      static_cast<double>(n) * std::numeric_limits<double>::epsilon() * max_diag;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double pivot = lower(i, i) * lower(i, i);
    if (!(pivot > floor)) {
      throw Error(ErrorKind::NotSPD, "pivot " + std::to_string(i) + " below threshold");
    }
  }
  return CholeskyFactor(std::move(lower));
}

namespace {

void check_rhs(const CholeskyFactor& f, const Vector& b) {
  if (static_cast<std::size_t>(b.size()) != f.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "rhs has length " + std::to_string(b.size()) +
                                                  ", factor has dim " + std::to_string(f.dim()));
  }
}

}  // namespace

Vector solve_spd(const CholeskyFactor& f, const Vector& b) {
  check_rhs(f, b);
  Vector y = f.lower().triangularView<Eigen::Lower>().solve(b);
  return f.lower().transpose().triangularView<Eigen::Upper>().solve(y);
}

Vector solve_upper(const CholeskyFactor& f, const Vector& b) {
  check_rhs(f, b);
  return f.lower().transpose().triangularView<Eigen::Upper>().solve(b);
}

Vector solve_lower_transposed(const CholeskyFactor& f, const Vector& b) {
  check_rhs(f, b);
  return f.lower().triangularView<Eigen::Lower>().solve(b);
}

double max_abs(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace distl0
