#include "powquad/convergence.hpp"

#include <cmath>
#include <limits>

namespace powquad {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) throw AlphaOutOfRange(alpha);
}

void require_kappa(double kappa) {
  if (!(kappa >= 1.0) || !std::isfinite(kappa))
    throw ParameterOutOfRange("condition number must be finite and at least 1");
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::de:
      return "de";
    case Method::de_adaptive:
      return "de-adaptive";
    case Method::gj1:
      return "gj1";
    case Method::gj2:
      return "gj2";
    case Method::gj2pre:
      return "gj2pre";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  if (name == "de") return Method::de;
  if (name == "de-adaptive") return Method::de_adaptive;
  if (name == "gj1") return Method::gj1;
  if (name == "gj2") return Method::gj2;
  if (name == "gj2pre") return Method::gj2pre;
  throw ParameterOutOfRange("unknown method '" + name + "'");
}

std::complex<double> f_de_eval(std::complex<double> z, double lambda, double alpha) {
  require_alpha(alpha);
  if (!(lambda > 0.0)) throw ParameterOutOfRange("lambda must be positive");
  const std::complex<double> w = kPi * std::sinh(z) / 2.0;
  const double pref = std::sin(alpha * kPi) * lambda / 2.0;
  if (w.real() > 350.0) {
    // exp(w) would overflow; divide through by it first.
    const std::complex<double> denom = 1.0 + lambda * std::exp(-w);
    return pref * std::cosh(z) * std::exp((alpha - 1.0) * w) / denom;
  }
  const std::complex<double> denom = std::exp(w) + lambda;
  if (std::abs(denom) < 1e-300) throw PoleProximity("evaluation point sits on a pole");
  return pref * std::cosh(z) * std::exp(alpha * w) / denom;
}

double pole_imag(double lambda, int k) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw ParameterOutOfRange("lambda must be positive and finite");
  if (k < 1 || k % 2 == 0) throw KNotOdd(k);

  const double log_lam = std::log(lambda);
  const double big_l = log_lam * log_lam;
  const double kd = static_cast<double>(k);
  // Radicand written as a product of positive factors; the naive difference
  // S - sqrt(S^2 - k^2 pi^4) cancels near the axis of symmetry.
  const double fa = big_l + (kd - 0.5) * (kd - 0.5) * kPi * kPi;
  const double fb = big_l + (kd + 0.5) * (kd + 0.5) * kPi * kPi;
  const double root = std::sqrt(fa * fb);
  const double c = (kd * kd - 0.25) * kPi * kPi;
  // dq = Q - 2 k^2 pi^2 >= 0 exactly, with Q = S + root; the denominator
  // root + c - L stays positive because root > L.
  const double dq = 4.0 * kd * kd * kPi * kPi * big_l / (root + c - big_l);
  const double q = 2.0 * kd * kd * kPi * kPi + dq;
  const double ratio = std::min(2.0 * kd * kd * kPi * kPi / q, 1.0);
  if (ratio >= 0.5) {
    const double delta = std::max(dq / q, 0.0);
    return kPi / 2.0 - std::asin(std::sqrt(delta));
  }
  return std::asin(std::sqrt(ratio));
}

double d0(double lambda) { return pole_imag(lambda, 1); }

double default_eps_rule(double kappa, double alpha) {
  require_kappa(kappa);
  require_alpha(alpha);
  return std::ldexp(std::pow(kappa, alpha / 2.0), -53);
}

double speed_de(double kappa, double alpha, double eps) {
  require_kappa(kappa);
  require_alpha(alpha);
  const double s = std::sqrt(kappa);
  NormEstimates norms{s, s, 0.0, s};
  const TruncationInterval iv = get_interval(norms, alpha, eps);
  return 2.0 * kPi * d0(s) / (iv.r - iv.l);
}

double speed_gj1(double kappa, double alpha) {
  require_kappa(kappa);
  require_alpha(alpha);
  const double inv = 1.0 / alpha;
  if (std::abs(inv - std::round(inv)) > 1e-9) throw NotUnitFraction(alpha);
  const double h = std::pow(kappa, alpha / 2.0);
  const double numer = 1.0 + h + std::sqrt(2.0 * h * (1.0 - std::cos(alpha * kPi)));
  const double denom = std::sqrt(1.0 + h * h + 2.0 * h * std::cos(alpha * kPi));
  return 2.0 * std::log(numer / denom);
}

double speed_gj2(double kappa) {
  require_kappa(kappa);
  const double q = std::pow(kappa, 0.25);
  if (q == 1.0) return std::numeric_limits<double>::infinity();
  return 2.0 * std::log((1.0 + q) / std::abs(1.0 - q));
}

SpeedRow recommend_method(double kappa, double alpha, double eps) {
  SpeedRow row;
  row.kappa = kappa;
  row.alpha = alpha;
  row.phi_de = speed_de(kappa, alpha, eps);
  row.phi_gj2 = speed_gj2(kappa);
  const double inv = 1.0 / alpha;
  if (std::abs(inv - std::round(inv)) <= 1e-9) row.phi_gj1 = speed_gj1(kappa, alpha);

  double best = row.phi_de;
  row.recommended = Method::de;
  if (row.phi_gj2 > best) {
    best = row.phi_gj2;
    row.recommended = Method::gj2;
  }
  if (row.phi_gj1 && *row.phi_gj1 > best) {
    best = *row.phi_gj1;
    row.recommended = Method::gj1;
  }
  return row;
}

double scalar_de_predict(double lambda, double alpha, double eps, int m) {
  require_alpha(alpha);
  if (!(lambda > 0.0)) throw ParameterOutOfRange("lambda must be positive");
  if (m < 2) throw ParameterOutOfRange("fixed rule needs at least two points");
  NormEstimates norms{lambda, 1.0 / lambda, 0.0, lambda};
  const TruncationInterval iv = get_interval(norms, alpha, eps);
  const double h = (iv.r - iv.l) / (m - 1);
  double sum = 0.0;
  for (int k = 0; k < m; ++k) {
    const double x = iv.l + k * h;
    const double w = (k == 0 || k == m - 1) ? h / 2.0 : h;
    sum += w * f_de_scalar(x, lambda, alpha);
  }
  const double exact = std::pow(lambda, alpha);
  return std::abs(sum - exact) / exact;
}

}  // namespace powquad
