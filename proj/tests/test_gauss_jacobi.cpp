#include <cmath>
#include <vector>

#include "doctest.h"
#include "powquad/errors.hpp"
#include "powquad/gauss_jacobi.hpp"
#include "powquad/oracles.hpp"
#include "powquad/synth.hpp"

using namespace powquad;

namespace {

// Frozen 30-digit evaluations of int_{-1}^{1} (1-u)^beta (1+u)^gamma u^j du
// for j = 0..19, computed with an arbitrary-precision Beta-function oracle.
struct MomentTable {
  double beta;
  double gamma;
  double moments[20];
};

const MomentTable kMoments[] = {
    {0.0, 0.0,
     {2.0, 0.0, 0.6666666666666666667, 0.0, 0.4, 0.0, 0.2857142857142857143, 0.0,
      0.2222222222222222222, 0.0, 0.1818181818181818182, 0.0, 0.1538461538461538462, 0.0,
      0.1333333333333333333, 0.0, 0.1176470588235294118, 0.0, 0.1052631578947368421, 0.0}},
    {0.5, -0.5,
     {3.141592653589793238, -1.570796326794896619, 1.570796326794896619,
      -1.178097245096172464, 1.178097245096172464, -0.981747704246810387,
      0.981747704246810387, -0.8590292412159590886, 0.8590292412159590886,
      -0.7731263170943631798, 0.7731263170943631798, -0.7086991240031662481,
      0.7086991240031662481, -0.6580777580029400875, 0.6580777580029400875,
      -0.6169478981277563321, 0.6169478981277563321, -0.5826730148984365359,
      0.5826730148984365359, -0.5535393641535147091}},
    {3.0, 0.0,
     {4.0, -2.4, 1.866666666666666667, -1.485714285714285714, 1.257142857142857143,
      -1.079365079365079365, 0.952380952380952381, -0.8484848484848484848,
      0.7676767676767676768, -0.6993006993006993007, 0.6433566433566433566,
      -0.5948717948717948718, 0.5538461538461538462, -0.5176470588235294118,
      0.4862745098039215686, -0.4582043343653250774, 0.4334365325077399381,
      -0.4110275689223057644, 0.3909774436090225564, -0.3726708074534161491}},
    {-0.5, 0.2,
     {2.909559155408505854, 1.198053769874090646, 1.388221034933470113,
      0.9102330443788136138, 1.021665156567144653, 0.764227681949518546,
      0.8422813671940874997, 0.672073123212074354, 0.7317725007594327064,
      0.6070954367245564667, 0.6552261039758956901, 0.5580865504298027051,
      0.5982793487429696445, 0.5194039525020227162, 0.5538241020687089306,
      0.4878555545526378521, 0.517895833486076674, 0.4614811274735852715,
      0.4880890886895622004, 0.4390011500815851994}},
};

double rel_two_norm_error(const DenseMatrix& got, const DenseMatrix& want) {
  DenseMatrix diff = got - want;
  return two_norm_estimate(diff) / two_norm_estimate(want);
}

}  // namespace

TEST_CASE("legendre special case reproduces the closed-form rules") {
  const JacobiRule one = jacobi_rule(1, 0.0, 0.0);
  REQUIRE(one.nodes.size() == 1);
  CHECK(one.nodes[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(one.weights[0] == doctest::Approx(2.0).epsilon(1e-15));

  const JacobiRule two = jacobi_rule(2, 0.0, 0.0);
  REQUIRE(two.nodes.size() == 2);
  CHECK(two.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(two.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(two.weights[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(two.weights[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("chebyshev-type weights sum to pi") {
  const JacobiRule rule = jacobi_rule(7, 0.5, -0.5);
  double sum = 0.0;
  for (double w : rule.weights) sum += w;
  CHECK(sum == doctest::Approx(3.14159265358979323846).epsilon(1e-13));
}

TEST_CASE("nodes stay inside the open interval, sorted, with positive weights") {
  for (const MomentTable& table : kMoments) {
    const JacobiRule rule = jacobi_rule(12, table.beta, table.gamma);
    for (size_t k = 0; k < rule.nodes.size(); ++k) {
      CHECK(rule.nodes[k] > -1.0);
      CHECK(rule.nodes[k] < 1.0);
      CHECK(rule.weights[k] > 0.0);
      if (k) CHECK(rule.nodes[k] > rule.nodes[k - 1]);
    }
  }
}

TEST_CASE("gauss rules integrate monomials exactly through degree 2m-1") {
  for (const MomentTable& table : kMoments) {
    for (int m = 1; m <= 10; ++m) {
      const JacobiRule rule = jacobi_rule(m, table.beta, table.gamma);
      const double mu0 = table.moments[0];
      for (int j = 0; j <= 2 * m - 1 && j < 20; ++j) {
        double quad = 0.0;
        for (size_t k = 0; k < rule.nodes.size(); ++k)
          quad += rule.weights[k] * std::pow(rule.nodes[k], j);
        CHECK(std::abs(quad - table.moments[j]) <= 1e-11 * mu0);
      }
    }
  }
}

TEST_CASE("rule construction rejects invalid parameters") {
  CHECK_THROWS_AS(jacobi_rule(0, 0.0, 0.0), ParameterOutOfRange);
  CHECK_THROWS_AS(jacobi_rule(4, -1.0, 0.0), ParameterOutOfRange);
  CHECK_THROWS_AS(jacobi_rule(4, 0.0, -1.5), ParameterOutOfRange);
}

TEST_CASE("both baseline rules converge on a scalar power") {
  DenseMatrix lam(1);
  lam(0, 0) = 3.7;
  // The second rule absorbs both endpoint singularities into its weight for
  // every alpha; the first one does so only when 1/alpha is an integer, and
  // otherwise degrades to slow algebraic convergence.
  for (double alpha : {0.2, 0.5, 0.8}) {
    const double exact = std::pow(3.7, alpha);
    const QuadratureReport r1 = gj1(lam, alpha, 48);
    const QuadratureReport r2 = gj2(lam, alpha, 48);
    const bool unit_fraction =
        std::abs(1.0 / alpha - std::round(1.0 / alpha)) < 1e-12;
    CHECK(r1.value(0, 0) ==
          doctest::Approx(exact).epsilon(unit_fraction ? 1e-12 : 1e-4));
    CHECK(r2.value(0, 0) == doctest::Approx(exact).epsilon(1e-12));
    CHECK(r1.evals == 48);
    CHECK(r2.evals == 48);
  }
}

TEST_CASE("baseline rules match the spectral oracle on spd input") {
  const DenseMatrix a = gen_spd(25, 100.0, 77);
  for (double alpha : {0.25, 0.5}) {
    const DenseMatrix oracle = hpd_power(a, alpha);
    CHECK(rel_two_norm_error(gj1(a, alpha, 64).value, oracle) <= 1e-11);
    CHECK(rel_two_norm_error(gj2(a, alpha, 64).value, oracle) <= 1e-11);
  }
}

TEST_CASE("lambert w matches frozen values and satisfies its residual bound") {
  CHECK(lambert_w(0.0) == 0.0);
  CHECK(lambert_w(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(lambert_w(1.0) == doctest::Approx(0.567143290409783873).epsilon(1e-15));
  CHECK(lambert_w(10.0) == doctest::Approx(1.7455280027406993831).epsilon(1e-15));
  CHECK(lambert_w(1e6) == doctest::Approx(11.383358086140052622).epsilon(1e-15));

  for (double x : {0.0, 1.0, std::exp(1.0), 10.0, 1e6}) {
    const double w = lambert_w(x);
    CHECK(std::abs(w * std::exp(w) - x) <= 1e-14 * std::max(x, 1.0));
  }
}

TEST_CASE("tau selection matches the frozen large-m sample") {
  // alpha = 0.5, mu_max = 10, mu_min = 0.1, m = 16: the switch point sits
  // near 1.44, so the asymptotic branch applies.
  const TauSelection sel = select_tau(0.5, 10.0, 0.1, 16);
  CHECK(sel.m_bar == doctest::Approx(1.4367030601767640672).epsilon(1e-14));
  CHECK(!sel.small_m_branch);
  CHECK(sel.tau == doctest::Approx(0.89251602342603863872).epsilon(1e-14));
  CHECK(sel.mu_max == 10.0);
  CHECK(sel.mu_min == 0.1);
}

TEST_CASE("tau selection honours the branch boundary") {
  // Push kappa high enough that m_bar exceeds m: small-m branch.
  const TauSelection small = select_tau(0.9, 1e8, 1e-8, 4);
  CHECK(small.small_m_branch);
  CHECK(4.0 < small.m_bar);
  CHECK(small.tau > 0.0);

  const TauSelection large = select_tau(0.9, 1e8, 1e-8, 100000);
  CHECK(!large.small_m_branch);
}

TEST_CASE("tau degenerates to the eigenvalue bound at kappa = 1") {
  // mu_max = mu_min = mu: c = 0, so tau = sqrt(mu_max * mu_min) = mu and
  // tau*A becomes the identity when A = lambda*I.
  const TauSelection sel = select_tau(0.4, 2.0, 2.0, 10);
  CHECK(!sel.small_m_branch);
  CHECK(sel.tau == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("preconditioned rule beats the plain rule on an ill-conditioned spd") {
  const DenseMatrix a = gen_spd(24, 1e5, 55);
  const NormEstimates norms = estimate_norms(a, 1e-4);
  for (double alpha : {0.2, 0.8}) {
    const DenseMatrix oracle = hpd_power(a, alpha);
    const double err_plain = rel_two_norm_error(gj2(a, alpha, 32).value, oracle);
    const Gj2PreResult pre = gj2_preconditioned(a, alpha, 32, norms);
    const double err_pre = rel_two_norm_error(pre.report.value, oracle);
    CHECK(err_pre < err_plain);
    CHECK(pre.tau.tau > 0.0);
  }
}

TEST_CASE("preconditioned rule is exact-direction invariant on the identity") {
  // kappa = 1: tau*A = I, and the quadrature reproduces I^alpha = I fast.
  const DenseMatrix eye = DenseMatrix::identity(4);
  NormEstimates norms;
  norms.norm_a = 1.0;
  norms.norm_ainv = 1.0;
  norms.rel_tol = 0.0;
  norms.spectral_radius_lb = 1.0;
  const Gj2PreResult pre = gj2_preconditioned(eye, 0.3, 16, norms);
  CHECK(pre.tau.tau == doctest::Approx(1.0).epsilon(1e-14));
  DenseMatrix diff = pre.report.value - eye;
  CHECK(diff.frobenius_norm() <= 1e-12);
}
