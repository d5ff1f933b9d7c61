#ifndef POWQUAD_MATRIX_HPP
#define POWQUAD_MATRIX_HPP

#include <cstddef>
#include <vector>

#include "powquad/errors.hpp"

namespace powquad {

using Vector = std::vector<double>;

/// Dense square matrix, row-major storage. All entries must stay finite;
/// routines that ingest external data call validate().
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(int n) : n_(n), data_(static_cast<size_t>(n) * n, 0.0) {
    if (n <= 0) throw ParameterOutOfRange("matrix dimension must be positive");
  }
  DenseMatrix(int n, std::vector<double> data);

  static DenseMatrix identity(int n);

  int dim() const { return n_; }
  double& operator()(int i, int j) { return data_[static_cast<size_t>(i) * n_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<size_t>(i) * n_ + j]; }
  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  DenseMatrix transpose() const;
  double frobenius_norm() const;
  double max_abs() const;
  bool all_finite() const;
  /// Throws ParameterOutOfRange if any entry is NaN or infinite.
  void validate() const;

  DenseMatrix& operator+=(const DenseMatrix& rhs);
  DenseMatrix& operator-=(const DenseMatrix& rhs);
  DenseMatrix& operator*=(double s);

 private:
  int n_ = 0;
  std::vector<double> data_;
};

DenseMatrix operator+(DenseMatrix lhs, const DenseMatrix& rhs);
DenseMatrix operator-(DenseMatrix lhs, const DenseMatrix& rhs);
DenseMatrix operator*(double s, DenseMatrix m);
DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
Vector operator*(const DenseMatrix& a, const Vector& x);

/// Sparse square matrix in compressed sparse row form.
/// row_ptr has dim()+1 entries; column indices are in range and each row's
/// indices are strictly increasing; values are finite.
class CsrMatrix {
 public:
  struct Triplet {
    int row;
    int col;
    double value;
  };

  CsrMatrix() = default;
  CsrMatrix(int n, std::vector<int> row_ptr, std::vector<int> col_idx,
            std::vector<double> values);

  /// Builds from triplets; duplicate (row, col) entries are summed.
  static CsrMatrix from_triplets(int n, std::vector<Triplet> triplets);

  int dim() const { return n_; }
  long nnz() const { return static_cast<long>(values_.size()); }
  const std::vector<int>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }

  Vector multiply(const Vector& x) const;
  Vector multiply_transposed(const Vector& x) const;
  DenseMatrix to_dense() const;

 private:
  void check_structure() const;

  int n_ = 0;
  std::vector<int> row_ptr_;
  std::vector<int> col_idx_;
  std::vector<double> values_;
};

// Small vector helpers shared across the library.
double dot(const Vector& a, const Vector& b);
double norm2(const Vector& v);
void axpy(double a, const Vector& x, Vector& y);  // y += a*x
void scale_inplace(Vector& v, double s);

}  // namespace powquad

#endif  // POWQUAD_MATRIX_HPP
