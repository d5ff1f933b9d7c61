#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "powquad/convergence.hpp"
#include "powquad/errors.hpp"

using namespace powquad;

namespace {
constexpr double kPi = 3.14159265358979323846;

// Reconstruct the full pole location x + i*y from the computed imaginary
// part, using whichever defining equation is well conditioned.
std::complex<double> pole_location(double lambda, int k) {
  const double y = pole_imag(lambda, k);
  const double cy = std::cos(y);
  double x;
  if (std::abs(cy) > 1e-8) {
    x = std::asinh(2.0 * std::log(lambda) / (kPi * cy));
  } else {
    x = std::acosh(2.0 * k / std::sin(y));
    if (lambda < 1.0) x = -x;
  }
  return {x, y};
}
}  // namespace

TEST_CASE("method names round-trip through the parser") {
  for (Method m : {Method::de, Method::de_adaptive, Method::gj1, Method::gj2,
                   Method::gj2pre})
    CHECK(parse_method(method_name(m)) == m);
  CHECK_THROWS_AS(parse_method("newton"), ParameterOutOfRange);
}

TEST_CASE("pole distance matches frozen high-precision values") {
  CHECK(d0(1.0) == doctest::Approx(kPi / 2.0).epsilon(1e-15));
  CHECK(d0(10.0) == doctest::Approx(0.89826854746072102861).epsilon(1e-14));
  CHECK(d0(100.0) == doctest::Approx(0.58060210135919778665).epsilon(1e-14));
  CHECK(d0(4.0) == doctest::Approx(1.1122267675952296841).epsilon(1e-14));
  CHECK(d0(std::sqrt(1e7)) == doctest::Approx(0.36622155502534913165).epsilon(1e-14));
}

TEST_CASE("pole distance is symmetric and monotone on a log grid") {
  double prev = kPi;  // larger than d0(1) = pi/2
  for (int i = 0; i <= 16; ++i) {
    const double lg = i;  // lambda = 10^0 .. 10^16 by symmetry check below
    const double lambda = std::pow(10.0, lg / 2.0);
    CHECK(std::abs(d0(lambda) - d0(1.0 / lambda)) <= 1e-14);
    CHECK(d0(lambda) > 0.0);
    CHECK(d0(lambda) <= kPi / 2.0);
    CHECK(d0(lambda) <= prev + 1e-15);  // nonincreasing in |log lambda|
    prev = d0(lambda);
  }
}

TEST_CASE("pole locations satisfy the defining equation to 1e-8") {
  for (double lambda : {1e-3, 1e-1, 1.0, 10.0, 1e3}) {
    for (int k : {1, 3, 5}) {
      const std::complex<double> z = pole_location(lambda, k);
      // At a pole, exp(pi*sinh(z)/2) = -lambda.
      const std::complex<double> val =
          std::exp(kPi * std::sinh(z) / 2.0) / (-lambda);
      CHECK(std::abs(val - 1.0) <= 1e-8);
    }
  }
}

TEST_CASE("higher pole indices sit farther from the axis") {
  const double lambda = 100.0;
  const double y1 = pole_imag(lambda, 1);
  const double y3 = pole_imag(lambda, 3);
  const double y5 = pole_imag(lambda, 5);
  CHECK(std::abs(y1) <= std::abs(y3));
  CHECK(std::abs(y3) <= std::abs(y5));
  CHECK(pole_imag(10.0, 3) == doctest::Approx(1.3281029339313917462).epsilon(1e-14));
}

TEST_CASE("pole index must be odd and positive") {
  CHECK_THROWS_AS(pole_imag(2.0, 2), KNotOdd);
  CHECK_THROWS_AS(pole_imag(2.0, 0), KNotOdd);
  CHECK_THROWS_AS(pole_imag(2.0, -1), KNotOdd);
}

TEST_CASE("strip integrand matches a by-hand sample and flags poles") {
  // z = 0, lambda = 1, alpha = 0.5: sin(pi/2)*1/2 * 1 * 1 / (1 + 1) = 1/4.
  const std::complex<double> v = f_de_eval({0.0, 0.0}, 1.0, 0.5);
  CHECK(v.real() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(v.imag() == doctest::Approx(0.0).epsilon(1e-15));

  // Directly on the first pole the denominator vanishes.
  const std::complex<double> on_pole(0.0, kPi / 2.0);
  CHECK_THROWS_AS(f_de_eval(on_pole, 1.0, 0.5), PoleProximity);
}

TEST_CASE("default tolerance rule follows the machine-epsilon scaling") {
  CHECK(default_eps_rule(1.0, 0.5) == doctest::Approx(std::ldexp(1.0, -53)).epsilon(1e-15));
  CHECK(default_eps_rule(1e8, 0.5) ==
        doctest::Approx(std::ldexp(1e2, -53)).epsilon(1e-14));
}

TEST_CASE("rates match frozen high-precision values") {
  CHECK(speed_gj2(1e4) == doctest::Approx(0.40134139092430232254).epsilon(1e-13));
  CHECK(speed_gj1(1.0, 0.5) ==
        doctest::Approx(1.7627471740390860505).epsilon(1e-13));  // = 2 ln(1+sqrt 2)
  CHECK(speed_gj1(1e6, 1.0 / 3.0) ==
        doctest::Approx(0.59163365276192875807).epsilon(1e-13));
  CHECK(speed_de(1e10, 0.5) == doctest::Approx(0.1820409952648422948).epsilon(1e-12));
}

TEST_CASE("gj2 rate is unbounded at kappa 1 and decays monotonically") {
  CHECK(std::isinf(speed_gj2(1.0)));
  double prev = speed_gj2(10.0);
  for (double kappa : {1e2, 1e4, 1e6, 1e8}) {
    const double phi = speed_gj2(kappa);
    CHECK(phi < prev);
    CHECK(phi > 0.0);
    prev = phi;
  }
}

TEST_CASE("gj1 rate requires a unit-fraction exponent") {
  CHECK_THROWS_AS(speed_gj1(100.0, 0.4), NotUnitFraction);
  CHECK_NOTHROW(speed_gj1(100.0, 0.25));
}

TEST_CASE("recommendation picks the fastest method") {
  // Small kappa: gj2's rate diverges, so it must win.
  CHECK(recommend_method(1.0 + 1e-9, 0.5).recommended == Method::gj2);
  // Huge kappa at alpha 0.5: the double-exponential rule wins.
  const SpeedRow big = recommend_method(1e10, 0.5);
  CHECK(big.recommended == Method::de);
  CHECK(big.phi_de > big.phi_gj2);
  // Non-unit-fraction alpha leaves the gj1 column empty.
  CHECK(!recommend_method(100.0, 0.4).phi_gj1.has_value());
  CHECK(recommend_method(100.0, 0.5).phi_gj1.has_value());
}

TEST_CASE("scalar predictor tracks the observed fixed-rule error") {
  // For lambda = 4, alpha = 0.5 the fixed rule at m = 40 lands deep in the
  // geometric regime; the prediction is the true relative error, so it must
  // shrink as m grows and roughly follow exp(-phi*m).
  const double e20 = scalar_de_predict(4.0, 0.5, 1e-12, 20);
  const double e40 = scalar_de_predict(4.0, 0.5, 1e-12, 40);
  const double e80 = scalar_de_predict(4.0, 0.5, 1e-12, 80);
  CHECK(e40 < e20);
  CHECK(e80 < e40);
  CHECK(e80 >= 0.0);
  CHECK(e20 < 1.0);
}
