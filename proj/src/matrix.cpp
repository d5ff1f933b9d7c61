#include "powquad/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace powquad {

DenseMatrix::DenseMatrix(int n, std::vector<double> data) : n_(n), data_(std::move(data)) {
  if (n <= 0) throw ParameterOutOfRange("matrix dimension must be positive");
  if (data_.size() != static_cast<size_t>(n) * n)
    throw ParameterOutOfRange("data size does not match dimension");
}

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double DenseMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

double DenseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

bool DenseMatrix::all_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

void DenseMatrix::validate() const {
  if (!all_finite()) throw ParameterOutOfRange("matrix contains a non-finite entry");
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& rhs) {
  for (size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& rhs) {
  for (size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

DenseMatrix operator+(DenseMatrix lhs, const DenseMatrix& rhs) { return lhs += rhs; }
DenseMatrix operator-(DenseMatrix lhs, const DenseMatrix& rhs) { return lhs -= rhs; }
DenseMatrix operator*(double s, DenseMatrix m) { return m *= s; }

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  const int n = a.dim();
  DenseMatrix c(n);
  const double* ad = a.data().data();
  const double* bd = b.data().data();
  double* cd = c.data().data();
  // i-k-j loop order keeps the inner loop contiguous in both b and c.
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const double aik = ad[static_cast<size_t>(i) * n + k];
      if (aik == 0.0) continue;
      const double* brow = bd + static_cast<size_t>(k) * n;
      double* crow = cd + static_cast<size_t>(i) * n;
      for (int j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

Vector operator*(const DenseMatrix& a, const Vector& x) {
  const int n = a.dim();
  Vector y(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

CsrMatrix::CsrMatrix(int n, std::vector<int> row_ptr, std::vector<int> col_idx,
                     std::vector<double> values)
    : n_(n), row_ptr_(std::move(row_ptr)), col_idx_(std::move(col_idx)),
      values_(std::move(values)) {
  check_structure();
}

void CsrMatrix::check_structure() const {
  if (n_ <= 0) throw ParameterOutOfRange("matrix dimension must be positive");
  if (row_ptr_.size() != static_cast<size_t>(n_) + 1)
    throw ParameterOutOfRange("row_ptr must have dim+1 entries");
  if (row_ptr_.front() != 0 || row_ptr_.back() != static_cast<int>(values_.size()) ||
      col_idx_.size() != values_.size())
    throw ParameterOutOfRange("inconsistent csr arrays");
  for (int i = 0; i < n_; ++i) {
    if (row_ptr_[i] > row_ptr_[i + 1]) throw ParameterOutOfRange("row_ptr not monotone");
    for (int p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
      if (col_idx_[p] < 0 || col_idx_[p] >= n_)
        throw ParameterOutOfRange("column index out of range");
      if (p > row_ptr_[i] && col_idx_[p] <= col_idx_[p - 1])
        throw ParameterOutOfRange("column indices not strictly increasing within a row");
      if (!std::isfinite(values_[p]))
        throw ParameterOutOfRange("matrix contains a non-finite entry");
    }
  }
}

CsrMatrix CsrMatrix::from_triplets(int n, std::vector<Triplet> triplets) {
  if (n <= 0) throw ParameterOutOfRange("matrix dimension must be positive");
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<int> row_ptr(n + 1, 0);
  std::vector<int> col_idx;
  std::vector<double> values;
  col_idx.reserve(triplets.size());
  values.reserve(triplets.size());
  for (size_t i = 0; i < triplets.size();) {
    const int r = triplets[i].row;
    const int c = triplets[i].col;
    if (r < 0 || r >= n || c < 0 || c >= n)
      throw ParameterOutOfRange("triplet index out of range");
    double v = 0.0;
    while (i < triplets.size() && triplets[i].row == r && triplets[i].col == c)
      v += triplets[i++].value;
    col_idx.push_back(c);
    values.push_back(v);
    ++row_ptr[r + 1];
  }
  for (int i = 0; i < n; ++i) row_ptr[i + 1] += row_ptr[i];
  return CsrMatrix(n, std::move(row_ptr), std::move(col_idx), std::move(values));
}

Vector CsrMatrix::multiply(const Vector& x) const {
  Vector y(n_, 0.0);
  for (int i = 0; i < n_; ++i) {
    double s = 0.0;
    for (int p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) s += values_[p] * x[col_idx_[p]];
    y[i] = s;
  }
  return y;
}

Vector CsrMatrix::multiply_transposed(const Vector& x) const {
  Vector y(n_, 0.0);
  for (int i = 0; i < n_; ++i)
    for (int p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
      y[col_idx_[p]] += values_[p] * x[i];
  return y;
}

DenseMatrix CsrMatrix::to_dense() const {
  DenseMatrix d(n_);
  for (int i = 0; i < n_; ++i)
    for (int p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) d(i, col_idx_[p]) += values_[p];
  return d;
}

double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vector& v) { return std::sqrt(dot(v, v)); }

void axpy(double a, const Vector& x, Vector& y) {
  for (size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

void scale_inplace(Vector& v, double s) {
  for (double& e : v) e *= s;
}

}  // namespace powquad
