#ifndef POWQUAD_CONVERGENCE_HPP
#define POWQUAD_CONVERGENCE_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "powquad/de.hpp"

namespace powquad {

// Geometric convergence-rate predictions. The trapezoid error of the
// transformed integrand decays like exp(-phi * m) where phi is set by the
// distance of the nearest integrand pole to the real axis; the competing
// Gauss-Jacobi rules have closed-form rates. Larger phi means faster.

enum class Method { de, de_adaptive, gj1, gj2, gj2pre };

/// Stable lowercase tag for a method ("de", "de-adaptive", "gj1", ...).
const char* method_name(Method m);
/// Inverse of method_name; throws ParameterOutOfRange on unknown tags.
Method parse_method(const std::string& name);

/// Transformed scalar integrand continued into the complex strip:
///   f(z) = sin(alpha*pi)*lambda/2 * exp(alpha*pi*sinh(z)/2) * cosh(z)
///          / (exp(pi*sinh(z)/2) + lambda).
/// Throws PoleProximity when the denominator modulus drops below 1e-300.
std::complex<double> f_de_eval(std::complex<double> z, double lambda, double alpha);

/// Imaginary part of the k-th integrand pole nearest the real axis (k odd):
/// the y in (0, pi/2] solving
///   pi*sinh(x)*cos(y)/2 = log(lambda),  pi*cosh(x)*sin(y)/2 = k*pi.
/// Evaluated in a cancellation-free form so pole_imag(1, k) = pi/2 exactly
/// and pole_imag(lambda, k) = pole_imag(1/lambda, k) to rounding.
double pole_imag(double lambda, int k);

/// Distance of the pole set to the real axis; equals pole_imag(lambda, 1).
double d0(double lambda);

/// Default truncation tolerance for rate scans: 2^-53 * kappa^(alpha/2).
double default_eps_rule(double kappa, double alpha);

/// DE rate for a matrix normalized to lambda_max*lambda_min = 1:
/// phi = 2*pi*d0(sqrt(kappa)) / (r - l) with [l, r] from get_interval at the
/// given eps and norm_a = norm_ainv = sqrt(kappa).
double speed_de(double kappa, double alpha, double eps);
inline double speed_de(double kappa, double alpha) {
  return speed_de(kappa, alpha, default_eps_rule(kappa, alpha));
}

/// gj1 rate, valid only when 1/alpha is an integer (within 1e-9);
/// throws NotUnitFraction otherwise.
double speed_gj1(double kappa, double alpha);

/// gj2 rate 2*log((1 + kappa^(1/4)) / |1 - kappa^(1/4)|). At kappa = 1 the
/// rate is unbounded; the sentinel +infinity is returned.
double speed_gj2(double kappa);

/// One row of a rate table: all applicable rates plus the winner
/// (ties go to Method::de).
struct SpeedRow {
  double kappa = 0.0;
  double alpha = 0.0;
  double phi_de = 0.0;
  std::optional<double> phi_gj1;
  double phi_gj2 = 0.0;
  Method recommended = Method::de;
};
SpeedRow recommend_method(double kappa, double alpha, double eps);
inline SpeedRow recommend_method(double kappa, double alpha) {
  return recommend_method(kappa, alpha, default_eps_rule(kappa, alpha));
}

/// Relative error of the m-point fixed rule applied to the scalar lambda,
/// using the interval that get_interval picks for norms (lambda, 1/lambda).
/// Predicts the matrix-level error at the matching extreme eigenvalue.
double scalar_de_predict(double lambda, double alpha, double eps, int m);

}  // namespace powquad

#endif  // POWQUAD_CONVERGENCE_HPP
