#include "powquad/de.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace powquad {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
// exp overflows just above this exponent.
constexpr double kMaxLogShift = 709.0;

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) throw AlphaOutOfRange(alpha);
}

double norm_of(const DenseMatrix& m, StoppingNorm which) {
  return which == StoppingNorm::frobenius ? m.frobenius_norm() : two_norm_estimate(m);
}

}  // namespace

TruncationInterval get_interval(const NormEstimates& norms, double alpha, double eps) {
  require_alpha(alpha);
  norms.validate();
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw ParameterOutOfRange("eps must be positive and finite");

  const double s = std::sin(alpha * kPi);
  const double a_tol = eps / 4.0 * kPi * alpha * (1.0 + alpha) / (s * (1.0 + 2.0 * alpha));
  const double a_norm = std::pow(2.0 * norms.norm_ainv, -alpha);
  const double b_tol = std::pow(
      eps / 4.0 * kPi * (1.0 - alpha) * (2.0 - alpha) / (s * (3.0 - 2.0 * alpha) * norms.norm_a),
      alpha / (alpha - 1.0));
  const double b_norm = std::pow(2.0 * norms.norm_a, alpha);

  TruncationInterval iv;
  if (a_tol <= a_norm) {
    iv.a = a_tol;
    iv.a_branch = EndpointBranch::tolerance;
  } else {
    iv.a = a_norm;
    iv.a_branch = EndpointBranch::norm;
  }
  if (b_tol >= b_norm) {
    iv.b = b_tol;
    iv.b_branch = EndpointBranch::tolerance;
  } else {
    iv.b = b_norm;
    iv.b_branch = EndpointBranch::norm;
  }
  if (!(iv.a < iv.b)) {
    std::ostringstream os;
    os << "tolerance too loose: endpoints cross (a = " << iv.a << ", b = " << iv.b << ")";
    throw TolTooLarge(os.str());
  }
  iv.l = std::asinh(2.0 * std::log(iv.a) / (alpha * kPi));
  iv.r = std::asinh(2.0 * std::log(iv.b) / (alpha * kPi));
  return iv;
}

TruncationBound truncation_error_bound(const NormEstimates& norms, double alpha, double a,
                                       double b, double norm_identity) {
  require_alpha(alpha);
  norms.validate();
  if (!(a > 0.0) || !(b > 0.0)) throw ParameterOutOfRange("endpoints must be positive");
  if (!(norm_identity > 0.0)) throw ParameterOutOfRange("norm_identity must be positive");
  if (a > std::pow(2.0 * norms.norm_ainv, -alpha))
    throw PreconditionViolated("left endpoint exceeds (2*norm_ainv)^(-alpha)");
  if (b < std::pow(2.0 * norms.norm_a, alpha))
    throw PreconditionViolated("right endpoint below (2*norm_a)^alpha");

  const double s = std::sin(alpha * kPi);
  TruncationBound out;
  out.left = s * (alpha + (1.0 + alpha) * norm_identity) / (alpha * kPi * (1.0 + alpha)) * a;
  out.right = s * (3.0 - 2.0 * alpha) * norms.norm_a /
              (kPi * (1.0 - alpha) * (2.0 - alpha)) * std::pow(b, 1.0 - 1.0 / alpha);
  out.total = out.left + out.right;
  return out;
}

double right_tail_comparison_bound(double norm_a, double alpha, double b) {
  require_alpha(alpha);
  if (!(norm_a > 0.0) || !(b > 0.0)) throw ParameterOutOfRange("inputs must be positive");
  return 2.0 * std::sin(alpha * kPi) * norm_a / (kPi * (1.0 - alpha)) *
         std::pow(b, 1.0 - 1.0 / alpha);
}

DeNode de_node(double x, double alpha) {
  require_alpha(alpha);
  const double log_sigma = kPi * std::sinh(x) / 2.0;
  if (log_sigma > kMaxLogShift) throw ShiftOverflow(x);
  DeNode node;
  node.sigma = std::exp(log_sigma);
  node.coeff = std::exp(alpha * log_sigma) * std::cosh(x);
  return node;
}

DenseMatrix de_integrand(const DenseMatrix& a, double alpha, double x) {
  const DeNode node = de_node(x, alpha);
  DenseMatrix f = lu_solve_shifted(a, node.sigma, DenseMatrix::identity(a.dim()));
  f *= node.coeff;
  return f;
}

double f_de_scalar(double x, double lambda, double alpha) {
  require_alpha(alpha);
  if (!(lambda > 0.0)) throw ParameterOutOfRange("lambda must be positive");
  const double t = kPi * std::sinh(x) / 2.0;
  const double log_lambda = std::log(lambda);
  // log(exp(t) + lambda) without overflow on either side.
  const double log_denom = t >= log_lambda ? t + std::log1p(std::exp(log_lambda - t))
                                           : log_lambda + std::log1p(std::exp(t - log_lambda));
  const double magnitude = std::exp(alpha * t - log_denom);
  return std::sin(alpha * kPi) * lambda / 2.0 * std::cosh(x) * magnitude;
}

ToleranceSpec ToleranceSpec::absolute(double eps_user, double norm_rel_tol) {
  if (!(eps_user > 0.0) || !std::isfinite(eps_user))
    throw ParameterOutOfRange("eps_user must be positive and finite");
  if (!(norm_rel_tol >= 0.0) || !(norm_rel_tol < 1.0))
    throw ParameterOutOfRange("norm_rel_tol must lie in [0, 1)");
  ToleranceSpec t;
  t.mode = Mode::absolute;
  t.eps_user = eps_user;
  t.norm_rel_tol = norm_rel_tol;
  t.eps_effective = eps_user / (1.0 + 1.0 / (1.0 - norm_rel_tol));
  return t;
}

ToleranceSpec ToleranceSpec::relative(double eps_user, double norm_rel_tol,
                                      double spectral_radius_lb, double alpha) {
  require_alpha(alpha);
  if (!(spectral_radius_lb > 0.0))
    throw ParameterOutOfRange("spectral_radius_lb must be positive");
  ToleranceSpec t = absolute(eps_user, norm_rel_tol);
  t.mode = Mode::relative;
  t.eps_effective *= std::pow(spectral_radius_lb, alpha);
  return t;
}

namespace {

// Accumulates sum_k weight_k * (sigma_k I + A)^{-1} * coeff_k over the given
// abscissas. One LU factorization per abscissa.
DenseMatrix accumulate_nodes(const DenseMatrix& a, double alpha,
                             const std::vector<double>& xs, const std::vector<double>& ws) {
  const int n = a.dim();
  const DenseMatrix eye = DenseMatrix::identity(n);
  DenseMatrix sum(n);
  for (size_t k = 0; k < xs.size(); ++k) {
    const DeNode node = de_node(xs[k], alpha);
    const double w = ws[k] * node.coeff;
    if (w == 0.0) continue;
    DenseMatrix f = lu_solve_shifted(a, node.sigma, eye);
    f *= w;
    sum += f;
  }
  return sum;
}

}  // namespace

QuadratureReport de_fixed(const DenseMatrix& a, double alpha,
                          const TruncationInterval& interval, int m) {
  require_alpha(alpha);
  a.validate();
  if (m < 2) throw ParameterOutOfRange("fixed rule needs at least two points");

  const double h = (interval.r - interval.l) / (m - 1);
  std::vector<double> xs(m), ws(m, h);
  for (int k = 0; k < m; ++k) xs[k] = interval.l + k * h;
  ws.front() = ws.back() = h / 2.0;

  QuadratureReport rep;
  rep.interval = interval;
  rep.m = m;
  rep.level = -1;
  rep.evals = m;
  const DenseMatrix sum = accumulate_nodes(a, alpha, xs, ws);
  rep.value = std::sin(alpha * kPi) / 2.0 * (a * sum);
  return rep;
}

RefineResult trapezoid_refine(const DenseMatrix& a, double alpha, double l, double h_prev,
                              const DenseMatrix& sum_prev, int m_prev) {
  require_alpha(alpha);
  if (m_prev < 2) throw ParameterOutOfRange("refinement needs at least two points");
  RefineResult out;
  out.h = h_prev / 2.0;
  out.m = 2 * m_prev - 1;
  std::vector<double> xs(m_prev - 1), ws(m_prev - 1, out.h);
  for (int k = 1; k < m_prev; ++k) xs[k - 1] = l + (2 * k - 1) * out.h;
  out.sum = sum_prev;
  out.sum *= 0.5;
  out.sum += accumulate_nodes(a, alpha, xs, ws);
  return out;
}

QuadratureReport de_adaptive(const DenseMatrix& a, double alpha, const ToleranceSpec& tol,
                             const NormEstimates& norms, int m0, long max_evals,
                             StoppingNorm stopping_norm) {
  require_alpha(alpha);
  a.validate();
  if (m0 < 2) throw ParameterOutOfRange("m0 must be at least 2");
  if (max_evals < m0) throw ParameterOutOfRange("max_evals must cover the initial mesh");

  const TruncationInterval interval = get_interval(norms, alpha, tol.eps_effective);
  const double prefactor = std::sin(alpha * kPi) / 2.0;

  QuadratureReport rep;
  rep.interval = interval;
  rep.m = m0;
  rep.level = 0;  // refinements completed so far
  rep.evals = m0;

  double h = (interval.r - interval.l) / (m0 - 1);
  std::vector<double> xs(m0), ws(m0, h);
  for (int k = 0; k < m0; ++k) xs[k] = interval.l + k * h;
  ws.front() = ws.back() = h / 2.0;
  DenseMatrix sum = accumulate_nodes(a, alpha, xs, ws);
  DenseMatrix a_sum = a * sum;
  rep.value = prefactor * a_sum;

  while (true) {
    if (rep.evals + (rep.m - 1) > max_evals) throw EvalBudgetExceeded(rep);
    RefineResult next = trapezoid_refine(a, alpha, interval.l, h, sum, rep.m);
    rep.evals += rep.m - 1;
    rep.m = next.m;
    rep.level += 1;
    h = next.h;
    sum = std::move(next.sum);
    DenseMatrix a_sum_next = a * sum;
    const double est = prefactor * norm_of(a_sum_next - a_sum, stopping_norm);
    a_sum = std::move(a_sum_next);
    rep.value = prefactor * a_sum;
    rep.est_error = est;
    rep.est_history.push_back(est);
    if (est <= tol.eps_effective / 2.0) return rep;
  }
}

DenseMatrix real_power(const DenseMatrix& a, double alpha, const ToleranceSpec& tol,
                       const NormEstimates& norms, int m0, long max_evals) {
  a.validate();
  if (!std::isfinite(alpha)) throw ParameterOutOfRange("alpha must be finite");

  const double floor_part = std::floor(alpha);
  const double frac = alpha - floor_part;
  const long ipow = static_cast<long>(floor_part);

  DenseMatrix result = DenseMatrix::identity(a.dim());
  if (frac > 0.0) {
    if (frac < 1.0)
      result = de_adaptive(a, frac, tol, norms, m0, max_evals).value;
  }
  if (ipow != 0) {
    DenseMatrix base = a;
    long e = ipow;
    if (e < 0) {
      base = LuFactorization(a, 0.0).solve(DenseMatrix::identity(a.dim()));
      e = -e;
    }
    while (e > 0) {
      if (e & 1) result = result * base;
      base = base * base;
      e >>= 1;
    }
  }
  return result;
}

}  // namespace powquad
