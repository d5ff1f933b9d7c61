#include "powquad/oracles.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "powquad/errors.hpp"

namespace powquad {

namespace {

DenseMatrix invert(const DenseMatrix& m) {
  try {
    LuFactorization lu(m, 0.0);
    return lu.solve(DenseMatrix::identity(m.dim()));
  } catch (const SingularShiftedSystem&) {
    throw SingularIterate("matrix inverse produced a non-finite entry");
  }
}

double residual_fro(const DenseMatrix& x, const DenseMatrix& a) {
  DenseMatrix r = (x * x);
  r -= a;
  return r.frobenius_norm();
}

}  // namespace

DenseMatrix db_sqrt(const DenseMatrix& a, double tol, int max_iters) {
  a.validate();
  const int n = a.dim();
  const double target = tol * a.frobenius_norm();
  DenseMatrix x = a;
  DenseMatrix y = DenseMatrix::identity(n);
  for (int iter = 0; iter < max_iters; ++iter) {
    if (residual_fro(x, a) <= target) return x;
    DenseMatrix yinv = invert(y);
    DenseMatrix xinv = invert(x);
    DenseMatrix xn = x;
    xn += yinv;
    xn *= 0.5;
    y += xinv;
    y *= 0.5;
    x = xn;
  }
  if (residual_fro(x, a) <= target) return x;
  throw ConvergenceFailure("square-root iteration did not reach tolerance");
}

DenseMatrix inv_newton_root(const DenseMatrix& a, int p, double tol, int max_iters) {
  a.validate();
  if (p < 1) throw ParameterOutOfRange("root order must be >= 1");
  const int n = a.dim();
  if (p == 1) {
    DenseMatrix x = invert(a);
    DenseMatrix xinv = invert(x);
    xinv -= a;
    if (xinv.frobenius_norm() > tol * a.frobenius_norm())
      throw ConvergenceFailure("inverse did not meet the residual tolerance");
    return x;
  }

  // Starting scale keeps the spectrum of M0 = c^p A inside the convergence
  // region: c = (2/(sigma_max + sigma_min))^(1/p).
  const double smax = two_norm_estimate(a);
  DenseMatrix ainv = invert(a);
  const double smin = 1.0 / two_norm_estimate(ainv);
  const double c = std::pow(2.0 / (smax + smin), 1.0 / static_cast<double>(p));

  DenseMatrix x = DenseMatrix::identity(n);
  x *= c;
  DenseMatrix m = a;
  m *= std::pow(c, static_cast<double>(p));

  const double pd = static_cast<double>(p);
  for (int iter = 0; iter < max_iters; ++iter) {
    // G = ((p+1) I - M)/p
    DenseMatrix g = DenseMatrix::identity(n);
    g *= (pd + 1.0);
    g -= m;
    g *= 1.0 / pd;
    x = (x * g);
    // M <- M * G^p by repeated squaring on G
    DenseMatrix gp = DenseMatrix::identity(n);
    DenseMatrix base = g;
    int e = p;
    while (e > 0) {
      if (e & 1) gp = (gp * base);
      e >>= 1;
      if (e > 0) base = (base * base);
    }
    m = (m * gp);
    if (!x.all_finite() || !m.all_finite()) throw SingularIterate("iterate left the finite range");
    DenseMatrix dev = m;
    dev -= DenseMatrix::identity(n);
    if (dev.frobenius_norm() <= 0.25 * tol) break;
  }

  // Verify the contract ||X^{-p} - A||_F <= tol * ||A||_F.
  DenseMatrix xinv = invert(x);
  DenseMatrix xpow = DenseMatrix::identity(n);
  for (int i = 0; i < p; ++i) xpow = (xpow * xinv);
  xpow -= a;
  if (xpow.frobenius_norm() > tol * a.frobenius_norm())
    throw ConvergenceFailure("inverse root iteration did not meet the residual tolerance");
  return x;
}

DenseMatrix pth_root(const DenseMatrix& a, int p, double tol, int max_iters) {
  if (p < 1) throw ParameterOutOfRange("root order must be >= 1");
  if (p == 1) return a;
  DenseMatrix xinvroot = inv_newton_root(a, p, tol * 0.1, max_iters);
  // A^(1/p) = A * (A^(-1/p))^(p-1)
  DenseMatrix acc = DenseMatrix::identity(a.dim());
  for (int i = 0; i < p - 1; ++i) acc = (acc * xinvroot);
  DenseMatrix root = (a * acc);
  // Residual contract: ||root^p - A||_F <= tol * ||A||_F
  DenseMatrix rp = DenseMatrix::identity(a.dim());
  for (int i = 0; i < p; ++i) rp = (rp * root);
  rp -= a;
  if (rp.frobenius_norm() > tol * a.frobenius_norm())
    throw ConvergenceFailure("matrix root residual exceeds tolerance");
  return root;
}

DenseMatrix hpd_power(const DenseMatrix& a, double alpha) {
  SymmetricEig eig = symmetric_eig(a);
  const int n = a.dim();
  for (int i = 0; i < n; ++i) {
    if (!(eig.eigenvalues[i] > 0.0)) throw NotSPD("eigenvalue not positive: matrix is not positive definite");
  }
  // Q * diag(lambda^alpha) * Q^T
  DenseMatrix scaled(n);
  for (int i = 0; i < n; ++i) {
    const double f = std::pow(eig.eigenvalues[i], alpha);
    for (int j = 0; j < n; ++j) scaled(j, i) = eig.vectors(j, i) * f;
  }
  return (scaled * eig.vectors.transpose());
}

namespace {

// Find p/q = alpha with 1 <= q <= q_max and |alpha - p/q| <= tol_match.
bool rationalize(double alpha, int q_max, double tol_match, int* p_out, int* q_out) {
  for (int q = 1; q <= q_max; ++q) {
    const double pr = alpha * q;
    const double p = std::round(pr);
    if (p < 1.0) continue;
    if (std::abs(pr - p) <= tol_match * q) {
      *p_out = static_cast<int>(p);
      *q_out = q;
      return true;
    }
  }
  return false;
}

}  // namespace

DenseMatrix reference_power(const DenseMatrix& a, double alpha, double tol) {
  a.validate();
  if (!(alpha > 0.0) || !(alpha < 1.0)) throw AlphaOutOfRange(alpha);
  if (std::abs(alpha - 0.5) < 1e-15) return db_sqrt(a, tol);
  int p = 0, q = 0;
  if (!rationalize(alpha, 32, 1e-9, &p, &q))
    throw ParameterOutOfRange(
        "exponent is not a ratio of small integers; no independent reference available");
  // (A^(1/q))^p
  DenseMatrix root = (q == 1) ? a : pth_root(a, q, tol);
  DenseMatrix result = DenseMatrix::identity(a.dim());
  DenseMatrix base = root;
  int e = p;
  while (e > 0) {
    if (e & 1) result = (result * base);
    e >>= 1;
    if (e > 0) base = (base * base);
  }
  return result;
}

ScaledMatrix scale_matrix(const DenseMatrix& a, const NormEstimates& norms) {
  norms.validate();
  ScaledMatrix out;
  out.c = std::sqrt(norms.norm_ainv / norms.norm_a);
  out.scaled = a;
  out.scaled *= out.c;
  return out;
}

}  // namespace powquad
