#include "doctest.h"
#include "helpers.hpp"

#include "distl0/errors.hpp"
#include "distl0/linalg.hpp"

#include <cmath>

using namespace distl0;
using testutil::random_spd;
using testutil::random_vector;

namespace {

Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no exception");
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("cholesky of identity is identity") {
  const CholeskyFactor f = cholesky(Matrix::Identity(3, 3));
  CHECK(f.lower() == Matrix::Identity(3, 3));
  CHECK(f.dim() == 3);
}

TEST_CASE("cholesky 2x2 known factor") {
  const CholeskyFactor f = cholesky(mat2(4, 2, 2, 3));
  CHECK(f.lower()(0, 0) == doctest::Approx(2.0));
  CHECK(f.lower()(0, 1) == 0.0);
  CHECK(f.lower()(1, 0) == doctest::Approx(1.0));
  CHECK(f.lower()(1, 1) == doctest::Approx(std::sqrt(2.0)));
  CHECK((f.reconstruct() - mat2(4, 2, 2, 3)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("cholesky rejects bad input") {
  CHECK(kind_of([] { cholesky(mat2(1, 2, 2, 1)); }) == ErrorKind::NotSPD);
  CHECK(kind_of([] { cholesky(mat2(0, 0, 0, 0)); }) == ErrorKind::NotSPD);
  CHECK(kind_of([] { cholesky(mat2(1, 0, 0, -1)); }) == ErrorKind::NotSPD);
  CHECK(kind_of([] { cholesky(Matrix(2, 3)); }) == ErrorKind::DimensionMismatch);
  CHECK(kind_of([] { cholesky(mat2(2, 1, 0, 2)); }) == ErrorKind::InvalidParams);
  CHECK(kind_of([] { cholesky(mat2(NAN, 0, 0, 1)); }) == ErrorKind::InvalidParams);
  // rank one: second pivot is round-off only
  CHECK(kind_of([] { cholesky(mat2(1, 1, 1, 1)); }) == ErrorKind::NotSPD);
}

TEST_CASE("solve_spd examples") {
  Vector b(3);
  b << 1, 2, 3;
  CHECK(solve_spd(cholesky(Matrix::Identity(3, 3)), b) == b);

  Vector b2(2);
  b2 << 8, 7;
  const Vector x = solve_spd(cholesky(mat2(4, 2, 2, 3)), b2);
  CHECK(x(0) == doctest::Approx(1.25));
  CHECK(x(1) == doctest::Approx(1.5));

  CHECK(kind_of([&] { solve_spd(cholesky(mat2(4, 2, 2, 3)), b); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("triangular solves") {
  Vector b(2);
  b << 2, 8;
  const CholeskyFactor diag(mat2(2, 0, 0, 4));
  const Vector x = solve_lower_transposed(diag, b);
  CHECK(x(0) == 1.0);
  CHECK(x(1) == 2.0);
  CHECK(solve_upper(diag, b) == x);
  CHECK(solve_lower_transposed(cholesky(Matrix::Identity(2, 2)), b) == b);
  CHECK(kind_of([&] { solve_upper(diag, Vector(3)); }) == ErrorKind::DimensionMismatch);
  CHECK(kind_of([&] { solve_lower_transposed(diag, Vector(3)); }) == ErrorKind::DimensionMismatch);

  Rng rng(5);
  const CholeskyFactor f = cholesky(random_spd(rng, 5));
  const Vector r = random_vector(rng, 5);
  // U^T x = r with U = L^T, i.e. L x = r
  CHECK((f.lower() * solve_lower_transposed(f, r) - r).cwiseAbs().maxCoeff() <= 1e-8 * (1 + max_abs(r)));
  CHECK((f.upper() * solve_upper(f, r) - r).cwiseAbs().maxCoeff() <= 1e-8 * (1 + max_abs(r)));
}

TEST_CASE("property: reconstruct and solve on random SPD matrices") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = static_cast<Eigen::Index>(1 + rng.below(12));
    const Matrix a = random_spd(rng, n);
    const CholeskyFactor f = cholesky(a);
    const double scale = a.cwiseAbs().maxCoeff();
    CHECK((f.reconstruct() - a).cwiseAbs().maxCoeff() <= 1e-10 * scale);
    for (Eigen::Index i = 0; i < n; ++i) {
      CHECK(f.lower()(i, i) > 0.0);
      for (Eigen::Index j = i + 1; j < n; ++j) CHECK(f.lower()(i, j) == 0.0);
    }
    const Vector x = random_vector(rng, n);
    const Vector back = solve_spd(f, a * x);
    CHECK((back - x).norm() <= 1e-8 * (1.0 + x.norm()));
    const Vector b = random_vector(rng, n);
    CHECK((a * solve_spd(f, b) - b).cwiseAbs().maxCoeff() <= 1e-8 * (1.0 + max_abs(b)));
    // bit-identical on repeat
    CHECK(cholesky(a).lower() == f.lower());
  }
}

TEST_CASE("max_abs") {
  CHECK(max_abs(Vector()) == 0.0);
  Vector v(3);
  v << 1, -4, 2;
  CHECK(max_abs(v) == 4.0);
}
