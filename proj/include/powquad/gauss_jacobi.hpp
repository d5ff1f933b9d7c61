#ifndef POWQUAD_GAUSS_JACOBI_HPP
#define POWQUAD_GAUSS_JACOBI_HPP

#include "powquad/de.hpp"
#include "powquad/matrix.hpp"

namespace powquad {

// Baseline quadratures for A^alpha built on Gauss-Jacobi rules. Both map the
// resolvent integral to (-1, 1) and fold the endpoint singularities into the
// Jacobi weight, so the evaluated factor is a smooth shifted solve.

/// Nodes and weights of the m-point Gauss rule for the weight
/// (1-u)^beta (1+u)^gamma on (-1, 1), computed from the eigen decomposition
/// of the Jacobi recurrence matrix. Nodes come out ascending; the weights sum
/// to 2^(beta+gamma+1) * B(beta+1, gamma+1).
struct JacobiRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double beta = 0.0;
  double gamma = 0.0;
};
JacobiRule jacobi_rule(int m, double beta, double gamma);

/// Substitution t = ((1+u)/(1-u))^(1/alpha), Jacobi weight (1/alpha - 2, 0):
///   A^alpha = 2*sin(alpha*pi)/(alpha*pi) * A *
///             sum_k w_k (1-u_k)^(-1/alpha) [sigma_k I + A]^{-1},
/// with sigma_k = ((1+u_k)/(1-u_k))^(1/alpha); one shifted solve per node.
QuadratureReport gj1(const DenseMatrix& a, double alpha, int m);

/// Substitution t = (1-v)^alpha / (1+v)^alpha, Jacobi weight (alpha-1, -alpha):
///   A^alpha = 2*sin(alpha*pi)/pi * A *
///             sum_k w_k (1+v_k)^{-1} [sigma_k I + A]^{-1},
/// with sigma_k = (1-v_k)/(1+v_k).
QuadratureReport gj2(const DenseMatrix& a, double alpha, int m);

/// Principal-branch Lambert W on [0, inf): Halley iteration from a log-based
/// initial guess, run to residual |W e^W - x| <= 1e-14 * max(x, 1).
double lambert_w(double x);

/// Spectrum-aware scaling factor for the preconditioned rule. mu_max and
/// mu_min are the extreme eigenvalues of A^{-1}; kappa = mu_max/mu_min.
/// Below the switch point m_bar = alpha/(2*sqrt(2)) * sqrt(log(e^2*kappa)) *
/// kappa^(1/4) the small-m branch applies:
///   tau = mu_min * (alpha/(2*e*m))^2 * exp(2*W(4*e*m^2/alpha^2)),
/// otherwise, with c = alpha*sqrt(mu_max)*log(kappa)/(8*m),
///   tau = (-c + sqrt(c^2 + sqrt(mu_max*mu_min)))^2.
struct TauSelection {
  double tau = 0.0;
  double m_bar = 0.0;
  bool small_m_branch = false;  // true iff m < m_bar
  double mu_max = 0.0;
  double mu_min = 0.0;
};
TauSelection select_tau(double alpha, double mu_max, double mu_min, int m);

/// gj2 applied to tau*A and rescaled: A^alpha = tau^(-alpha) (tau*A)^alpha.
/// The eigenvalue bounds come from the norm estimates of the symmetric
/// positive definite input (mu_max = norm_ainv, mu_min = 1/norm_a).
struct Gj2PreResult {
  QuadratureReport report;
  TauSelection tau;
};
Gj2PreResult gj2_preconditioned(const DenseMatrix& a, double alpha, int m,
                                const NormEstimates& norms);

}  // namespace powquad

#endif  // POWQUAD_GAUSS_JACOBI_HPP
