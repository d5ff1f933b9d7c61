#ifndef POWQUAD_ORACLES_HPP
#define POWQUAD_ORACLES_HPP

#include "powquad/linalg.hpp"
#include "powquad/matrix.hpp"

namespace powquad {

// Independent reference computations used to validate the quadrature
// results. None of them share code with the quadrature path.

/// Coupled Denman-Beavers square-root iteration
///   X <- (X + Y^{-1})/2, Y <- (Y + X^{-1})/2, X0 = A, Y0 = I,
/// run until ||X^2 - A||_F <= tol * ||A||_F. Throws SingularIterate when an
/// iterate loses invertibility, ConvergenceFailure past max_iters.
DenseMatrix db_sqrt(const DenseMatrix& a, double tol = 1e-12, int max_iters = 100);

/// Coupled inverse-Newton iteration for A^(-1/p), p >= 1:
///   X <- X*G,  M <- M*G^p,  G = ((p+1) I - M)/p,
/// from X0 = c*I, M0 = c^p*A with c = (2/(sigma_max + sigma_min))^(1/p).
/// On return ||X^(-p) - A||_F <= tol * ||A||_F holds (verified explicitly).
DenseMatrix inv_newton_root(const DenseMatrix& a, int p, double tol = 1e-12,
                            int max_iters = 200);

/// A^(1/p) = A * inv_newton_root(A, p)^(p-1), with the residual contract
/// ||result^p - A||_F <= tol * ||A||_F verified before returning.
DenseMatrix pth_root(const DenseMatrix& a, int p, double tol = 1e-12, int max_iters = 200);

/// A^alpha for symmetric positive definite A through the full
/// eigendecomposition; accepts any real alpha. Throws NotSPD if an
/// eigenvalue is not strictly positive.
DenseMatrix hpd_power(const DenseMatrix& a, double alpha);

/// Reference A^alpha for general nonsingular A with no eigendecomposition:
/// alpha = 0.5 runs db_sqrt; other alpha are resolved as p/q with q <= 32
/// (throws ParameterOutOfRange when alpha has no such representation within
/// 1e-9) and computed as (A^(1/q))^p.
DenseMatrix reference_power(const DenseMatrix& a, double alpha, double tol = 1e-12);

/// Two-sided normalization c = 1/sqrt(sigma_max*sigma_min), so the scaled
/// matrix has sigma_max*sigma_min = 1 and A^alpha = c^(-alpha) * (c*A)^alpha.
struct ScaledMatrix {
  double c = 1.0;
  DenseMatrix scaled;
};
ScaledMatrix scale_matrix(const DenseMatrix& a, const NormEstimates& norms);

}  // namespace powquad

#endif  // POWQUAD_ORACLES_HPP
