#include "powquad/gauss_jacobi.hpp"

#include <cmath>

namespace powquad {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kE = 2.718281828459045235360287471352662498;

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) throw AlphaOutOfRange(alpha);
}

}  // namespace

JacobiRule jacobi_rule(int m, double beta, double gamma) {
  if (m < 1) throw ParameterOutOfRange("rule size must be at least 1");
  if (!(beta > -1.0) || !(gamma > -1.0))
    throw ParameterOutOfRange("jacobi exponents must exceed -1");

  // Zeroth moment 2^(beta+gamma+1) B(beta+1, gamma+1) through log-gammas.
  const double mu0 = std::exp((beta + gamma + 1.0) * std::log(2.0) + std::lgamma(beta + 1.0) +
                              std::lgamma(gamma + 1.0) - std::lgamma(beta + gamma + 2.0));

  // Three-term recurrence of the monic Jacobi polynomials.
  DenseMatrix j(m);
  j(0, 0) = (gamma - beta) / (beta + gamma + 2.0);
  for (int k = 1; k < m; ++k) {
    const double s = 2.0 * k + beta + gamma;
    j(k, k) = (gamma * gamma - beta * beta) / (s * (s + 2.0));
    double bk;
    if (k == 1) {
      bk = 4.0 * (1.0 + beta) * (1.0 + gamma) /
           ((2.0 + beta + gamma) * (2.0 + beta + gamma) * (3.0 + beta + gamma));
    } else {
      bk = 4.0 * k * (k + beta) * (k + gamma) * (k + beta + gamma) /
           (s * s * (s + 1.0) * (s - 1.0));
    }
    j(k, k - 1) = j(k - 1, k) = std::sqrt(bk);
  }

  const SymmetricEig eig = symmetric_eig(j);
  JacobiRule rule;
  rule.beta = beta;
  rule.gamma = gamma;
  rule.nodes = eig.eigenvalues;
  rule.weights.resize(m);
  for (int k = 0; k < m; ++k) {
    const double q0 = eig.vectors(0, k);
    rule.weights[k] = mu0 * q0 * q0;
  }
  return rule;
}

QuadratureReport gj1(const DenseMatrix& a, double alpha, int m) {
  require_alpha(alpha);
  a.validate();
  const JacobiRule rule = jacobi_rule(m, 1.0 / alpha - 2.0, 0.0);
  const int n = a.dim();
  const DenseMatrix eye = DenseMatrix::identity(n);
  DenseMatrix sum(n);
  for (int k = 0; k < m; ++k) {
    const double u = rule.nodes[k];
    const double sigma = std::pow((1.0 + u) / (1.0 - u), 1.0 / alpha);
    const double w = rule.weights[k] * std::pow(1.0 - u, -1.0 / alpha);
    DenseMatrix f = lu_solve_shifted(a, sigma, eye);
    f *= w;
    sum += f;
  }
  QuadratureReport rep;
  rep.m = m;
  rep.level = -1;
  rep.evals = m;
  rep.value = 2.0 * std::sin(alpha * kPi) / (alpha * kPi) * (a * sum);
  return rep;
}

QuadratureReport gj2(const DenseMatrix& a, double alpha, int m) {
  require_alpha(alpha);
  a.validate();
  const JacobiRule rule = jacobi_rule(m, alpha - 1.0, -alpha);
  const int n = a.dim();
  const DenseMatrix eye = DenseMatrix::identity(n);
  DenseMatrix sum(n);
  for (int k = 0; k < m; ++k) {
    const double v = rule.nodes[k];
    const double sigma = (1.0 - v) / (1.0 + v);
    const double w = rule.weights[k] / (1.0 + v);
    DenseMatrix f = lu_solve_shifted(a, sigma, eye);
    f *= w;
    sum += f;
  }
  QuadratureReport rep;
  rep.m = m;
  rep.level = -1;
  rep.evals = m;
  rep.value = 2.0 * std::sin(alpha * kPi) / kPi * (a * sum);
  return rep;
}

double lambert_w(double x) {
  if (!(x >= 0.0) || !std::isfinite(x))
    throw ParameterOutOfRange("lambert_w requires a finite nonnegative argument");
  if (x == 0.0) return 0.0;

  double w;
  if (x < 0.7) {
    w = x * (1.0 - x);
  } else if (x < 4.0) {
    w = 0.44 + 0.19 * (x - 0.7);
  } else {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }

  const double target = 1e-14 * std::max(x, 1.0);
  for (int it = 0; it < 60; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (std::abs(f) <= target) return w;
    const double denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
    w -= f / denom;
  }
  throw ConvergenceFailure("lambert_w halley iteration failed to meet its residual");
}

TauSelection select_tau(double alpha, double mu_max, double mu_min, int m) {
  require_alpha(alpha);
  if (!(mu_min > 0.0) || !(mu_max >= mu_min))
    throw ParameterOutOfRange("need 0 < mu_min <= mu_max");
  if (m < 1) throw ParameterOutOfRange("rule size must be at least 1");

  const double kappa = mu_max / mu_min;
  TauSelection sel;
  sel.mu_max = mu_max;
  sel.mu_min = mu_min;
  sel.m_bar = alpha / (2.0 * std::sqrt(2.0)) * std::sqrt(2.0 + std::log(kappa)) *
              std::pow(kappa, 0.25);
  sel.small_m_branch = m < sel.m_bar;
  if (sel.small_m_branch) {
    const double g = alpha / (2.0 * kE * m);
    sel.tau = mu_min * g * g * std::exp(2.0 * lambert_w(4.0 * kE * m * m / (alpha * alpha)));
  } else {
    const double c = alpha * std::sqrt(mu_max) * std::log(kappa) / (8.0 * m);
    const double root = -c + std::sqrt(c * c + std::sqrt(mu_max * mu_min));
    sel.tau = root * root;
  }
  return sel;
}

Gj2PreResult gj2_preconditioned(const DenseMatrix& a, double alpha, int m,
                                const NormEstimates& norms) {
  require_alpha(alpha);
  norms.validate();
  Gj2PreResult out;
  out.tau = select_tau(alpha, norms.norm_ainv, 1.0 / norms.norm_a, m);
  DenseMatrix scaled = a;
  scaled *= out.tau.tau;
  out.report = gj2(scaled, alpha, m);
  out.report.value *= std::pow(out.tau.tau, -alpha);
  return out;
}

}  // namespace powquad
