#ifndef POWQUAD_LINALG_HPP
#define POWQUAD_LINALG_HPP

#include <utility>
#include <vector>

#include "powquad/matrix.hpp"

namespace powquad {

/// LU factorization with partial pivoting of (sigma*I + M).
/// Throws SingularShiftedSystem when a pivot falls below
/// pivot_tol_factor * dim * eps * max|entry| of the shifted matrix.
class LuFactorization {
 public:
  LuFactorization(const DenseMatrix& m, double sigma, double pivot_tol_factor = 16.0);

  int dim() const { return n_; }
  double sigma() const { return sigma_; }

  Vector solve(Vector rhs) const;
  Vector solve_transposed(Vector rhs) const;
  /// Solves for every column of b; returns the matrix of solutions.
  DenseMatrix solve(const DenseMatrix& b) const;

 private:
  int n_;
  double sigma_;
  std::vector<double> lu_;  // row-major, L below the diagonal (unit), U on and above
  std::vector<int> perm_;   // row permutation applied to the input
};

/// One-call form: solves (sigma*I + M) X = B.
DenseMatrix lu_solve_shifted(const DenseMatrix& m, double sigma, const DenseMatrix& b);
Vector lu_solve_shifted(const DenseMatrix& m, double sigma, const Vector& b);

/// Two-sided norm data for a nonsingular matrix.
/// norm_a estimates the largest singular value, norm_ainv the inverse of the
/// smallest one, each with relative accuracy rel_tol, so
/// norm_a * norm_ainv tracks the spectral condition number.
/// spectral_radius_lb is a lower estimate of the spectral radius (for
/// symmetric positive definite input it is the largest-eigenvalue estimate).
struct NormEstimates {
  double norm_a = 0.0;
  double norm_ainv = 0.0;
  double rel_tol = 0.0;
  double spectral_radius_lb = 0.0;

  /// Throws ParameterOutOfRange unless norm_a, norm_ainv > 0,
  /// rel_tol in [0, 0.5), and norm_a * norm_ainv >= 1 - 2*rel_tol.
  void validate() const;
};

/// Estimates extreme singular values by power iteration on A^T A and inverse
/// iteration through the LU factors. Throws ConvergenceFailure when either
/// iteration fails to settle within max_iters sweeps.
NormEstimates estimate_norms(const DenseMatrix& a, double rel_tol = 1e-3,
                             int max_iters = 0 /* 0 selects 10*dim() */);

/// Sparse variant for symmetric positive definite matrices: power iteration
/// for the largest eigenvalue and conjugate-gradient inverse iteration for
/// the smallest.
NormEstimates estimate_norms(const CsrMatrix& a, double rel_tol = 1e-3,
                             int max_iters = 0);

/// Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Returns eigenvalues in ascending order and the orthogonal matrix whose
/// columns are the matching eigenvectors. Throws NotSymmetric when
/// ||A - A^T||_F > 1e-12 ||A||_F and ConvergenceFailure when the off-diagonal
/// mass fails to vanish within max_sweeps.
struct SymmetricEig {
  std::vector<double> eigenvalues;
  DenseMatrix vectors;
};
SymmetricEig symmetric_eig(const DenseMatrix& a, int max_sweeps = 30);

/// Spectral norm estimate by power iteration on M^T M; a lower bound that is
/// tight for the iteration counts used here.
double two_norm_estimate(const DenseMatrix& m, double rel_tol = 1e-9, int max_iters = 500);

/// Conjugate gradients on (sigma*I + A) x = y for symmetric positive
/// definite A and sigma >= 0. Stops when ||r||_2 <= tol * ||y||_2.
/// Throws ConvergenceFailure (message carries the residual history tail)
/// when max_iters is hit first.
struct CgResult {
  Vector x;
  std::vector<double> residual_history;
  int iterations = 0;
};
CgResult cg_solve_shifted(const CsrMatrix& a, double sigma, const Vector& y,
                          double tol = 1e-10, int max_iters = 0 /* 0 selects 4*dim */);

}  // namespace powquad

#endif  // POWQUAD_LINALG_HPP
