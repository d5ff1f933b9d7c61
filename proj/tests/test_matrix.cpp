#include <cmath>

#include "doctest.h"
#include "powquad/matrix.hpp"

using namespace powquad;

TEST_CASE("identity and element access") {
  const DenseMatrix eye = DenseMatrix::identity(3);
  CHECK(eye.dim() == 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(eye(i, j) == (i == j ? 1.0 : 0.0));
  CHECK(eye.frobenius_norm() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
}

TEST_CASE("dense product matches a hand-computed 2x2 case") {
  DenseMatrix a(2), b(2);
  a(0, 0) = 1; a(0, 1) = 2; a(1, 0) = 3; a(1, 1) = 4;
  b(0, 0) = 5; b(0, 1) = 6; b(1, 0) = 7; b(1, 1) = 8;
  const DenseMatrix c = a * b;
  CHECK(c(0, 0) == 19.0);
  CHECK(c(0, 1) == 22.0);
  CHECK(c(1, 0) == 43.0);
  CHECK(c(1, 1) == 50.0);
}

TEST_CASE("transpose, sums, and scalar scaling") {
  DenseMatrix a(2);
  a(0, 0) = 1; a(0, 1) = 2; a(1, 0) = 3; a(1, 1) = 4;
  const DenseMatrix at = a.transpose();
  CHECK(at(0, 1) == 3.0);
  CHECK(at(1, 0) == 2.0);

  DenseMatrix s = a + at;
  CHECK(s(0, 1) == s(1, 0));
  s -= a;
  CHECK(s(0, 1) == 3.0);

  DenseMatrix twice = 2.0 * a;
  CHECK(twice(1, 1) == 8.0);
  twice *= 0.5;
  CHECK(twice(1, 1) == 4.0);
}

TEST_CASE("matrix-vector product") {
  DenseMatrix a(2);
  a(0, 0) = 1; a(0, 1) = 2; a(1, 0) = 3; a(1, 1) = 4;
  const Vector x = {1.0, -1.0};
  const Vector y = a * x;
  CHECK(y[0] == -1.0);
  CHECK(y[1] == -1.0);
}

TEST_CASE("vector helpers: dot, norm, axpy, scaling") {
  Vector x = {3.0, 4.0};
  CHECK(norm2(x) == doctest::Approx(5.0).epsilon(1e-15));
  Vector y = {1.0, 1.0};
  CHECK(dot(x, y) == 7.0);
  axpy(2.0, x, y);  // y <- 2x + y
  CHECK(y[0] == 7.0);
  CHECK(y[1] == 9.0);
  scale_inplace(y, 0.5);
  CHECK(y[0] == 3.5);
}

TEST_CASE("csr assembly sums duplicate entries") {
  std::vector<CsrMatrix::Triplet> entries = {
      {0, 0, 1.0}, {0, 0, 2.0}, {1, 1, 4.0}, {0, 1, -1.0}};
  const CsrMatrix m = CsrMatrix::from_triplets(2, entries);
  CHECK(m.nnz() == 3);
  const DenseMatrix d = m.to_dense();
  CHECK(d(0, 0) == 3.0);
  CHECK(d(0, 1) == -1.0);
  CHECK(d(1, 0) == 0.0);
  CHECK(d(1, 1) == 4.0);
}

TEST_CASE("csr products agree with the dense equivalents") {
  std::vector<CsrMatrix::Triplet> entries = {
      {0, 0, 2.0}, {0, 2, -1.0}, {1, 1, 3.0}, {2, 0, -1.0}, {2, 2, 2.0}};
  const CsrMatrix m = CsrMatrix::from_triplets(3, entries);
  const DenseMatrix d = m.to_dense();
  const Vector x = {1.0, 2.0, 3.0};

  const Vector y_sparse = m.multiply(x);
  const Vector y_dense = d * x;
  for (int i = 0; i < 3; ++i) CHECK(y_sparse[i] == doctest::Approx(y_dense[i]).epsilon(1e-15));

  const Vector yt_sparse = m.multiply_transposed(x);
  const Vector yt_dense = d.transpose() * x;
  for (int i = 0; i < 3; ++i)
    CHECK(yt_sparse[i] == doctest::Approx(yt_dense[i]).epsilon(1e-15));
}

TEST_CASE("all_finite flags infinities and NaNs") {
  DenseMatrix a(2);
  CHECK(a.all_finite());
  a(1, 0) = std::nan("");
  CHECK(!a.all_finite());
}
