#pragma once

// Dense kernel shared by every other module. Storage and BLAS-like plumbing
// (products, transposes, dots, axpy) come straight from Eigen; this header
// adds the SPD factorization contract the solvers rely on.

#include <Eigen/Core>

#include <cstddef>

namespace distl0 {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// Lower-triangular Cholesky factor L of an SPD matrix A = L Lᵀ.
class CholeskyFactor {
 public:
  CholeskyFactor() = default;
  explicit CholeskyFactor(Matrix lower);

  const Matrix& lower() const noexcept { return lower_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(lower_.rows()); }

  /// Lᵀ, the upper-triangular factor with A = (Lᵀ)ᵀ Lᵀ.
  Matrix upper() const { return lower_.transpose(); }

  /// L Lᵀ.
  Matrix reconstruct() const;

 private:
  Matrix lower_;
};

/// Factor a symmetric positive-definite matrix.
///
/// Throws DimensionMismatch for non-square input, InvalidParams for a
/// non-finite or asymmetric (beyond 1e-10 relative) matrix, and NotSPD when a
/// pivot falls to dim * machine-epsilon * max-diagonal or below.
CholeskyFactor cholesky(const Matrix& a);

/// x with L Lᵀ x = b.
Vector solve_spd(const CholeskyFactor& f, const Vector& b);

/// x with Lᵀ x = b, i.e. the inverse of the upper factor applied to b.
Vector solve_upper(const CholeskyFactor& f, const Vector& b);

/// x with L x = b. When the upper factor U = Lᵀ plays the role of a square
/// root of A, this is (U⁻¹)ᵀ b.
Vector solve_lower_transposed(const CholeskyFactor& f, const Vector& b);

/// Largest absolute entry; 0 for an empty vector.
double max_abs(const Vector& v);

}  // namespace distl0
