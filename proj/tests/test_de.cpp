#include <cmath>
#include <vector>

#include "doctest.h"
#include "powquad/de.hpp"
#include "powquad/errors.hpp"
#include "powquad/oracles.hpp"
#include "powquad/synth.hpp"

using namespace powquad;

namespace {

NormEstimates norms_of(double norm_a, double norm_ainv, double rel_tol = 1e-3) {
  NormEstimates n;
  n.norm_a = norm_a;
  n.norm_ainv = norm_ainv;
  n.rel_tol = rel_tol;
  n.spectral_radius_lb = 1.0 / norm_ainv;
  return n;
}

double rel_two_norm_error(const DenseMatrix& got, const DenseMatrix& want) {
  DenseMatrix diff = got - want;
  return two_norm_estimate(diff) / two_norm_estimate(want);
}

}  // namespace

TEST_CASE("interval endpoints match independently computed values") {
  // Frozen from a 50-digit evaluation of the endpoint formulas at
  // alpha = 0.5, eps = 1e-7, ||A|| = ||A^-1|| = 10.
  const TruncationInterval iv = get_interval(norms_of(10.0, 10.0), 0.5, 1e-7);
  CHECK(iv.a == doctest::Approx(2.9452431127404311611e-8).epsilon(1e-14));
  CHECK(iv.b == doctest::Approx(339530545.26271004964).epsilon(1e-14));
  CHECK(iv.l == doctest::Approx(-3.7882683131875461197).epsilon(1e-14));
  CHECK(iv.r == doctest::Approx(3.9128359178215621826).epsilon(1e-14));
  CHECK(iv.a_branch == EndpointBranch::tolerance);
  CHECK(iv.b_branch == EndpointBranch::tolerance);
  CHECK(iv.l < iv.r);
}

TEST_CASE("interval endpoints fall back to the norm branch for loose eps") {
  // With a huge tolerance the tolerance-driven candidates overshoot the norm
  // thresholds, so the norm branch must clamp both ends: a at
  // (2*norm_ainv)^(-alpha) and b at (2*norm_a)^alpha.
  const TruncationInterval iv = get_interval(norms_of(1.0, 1.0), 0.5, 3.0);
  CHECK(iv.a_branch == EndpointBranch::norm);
  CHECK(iv.b_branch == EndpointBranch::norm);
  CHECK(iv.a == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-15));
  CHECK(iv.b == doctest::Approx(std::pow(2.0, 0.5)).epsilon(1e-15));
}

TEST_CASE("interval selection is monotone in the tolerance") {
  const NormEstimates norms = norms_of(10.0, 10.0);
  double prev_l = 0.0, prev_r = 0.0;
  bool first = true;
  for (double eps : {1e-4, 1e-6, 1e-8, 1e-10, 1e-12}) {
    const TruncationInterval iv = get_interval(norms, 0.35, eps);
    if (!first) {
      CHECK(iv.l <= prev_l);
      CHECK(iv.r >= prev_r);
    }
    prev_l = iv.l;
    prev_r = iv.r;
    first = false;
  }
}

TEST_CASE("interval selection rejects invalid inputs") {
  CHECK_THROWS_AS(get_interval(norms_of(1.0, 1.0), 1.2, 1e-8), AlphaOutOfRange);
  CHECK_THROWS_AS(get_interval(norms_of(1.0, 1.0), -0.1, 1e-8), AlphaOutOfRange);
  CHECK_THROWS_AS(get_interval(norms_of(1.0, 1.0), 0.5, 0.0), ParameterOutOfRange);
  // Degenerate norm data squeezes the window shut: a >= b.
  NormEstimates tight = norms_of(0.05, 2.0, 0.49);
  CHECK_THROWS_AS(get_interval(tight, 0.5, 2.0), TolTooLarge);
}

TEST_CASE("interval endpoints never overflow the shift for extreme inputs") {
  for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9})
    for (double kappa : {1.0, 1e4, 1e8, 1e16})
      for (double eps : {1e-4, 1e-10, 1e-16}) {
        const double s = std::sqrt(kappa);
        const TruncationInterval iv = get_interval(norms_of(s, s), alpha, eps);
        CHECK_NOTHROW(de_node(iv.l, alpha));
        CHECK_NOTHROW(de_node(iv.r, alpha));
      }
}

TEST_CASE("truncation bound matches the frozen symmetric case") {
  // alpha = 0.5, unit norms, window [1/4, 4]: both tails equal by symmetry.
  const TruncationBound bound =
      truncation_error_bound(norms_of(1.0, 1.0), 0.5, 0.25, 4.0);
  CHECK(bound.left == doctest::Approx(0.21220659078919378103).epsilon(1e-14));
  CHECK(bound.right == doctest::Approx(0.21220659078919378103).epsilon(1e-14));
  CHECK(bound.total == doctest::Approx(0.42441318157838756205).epsilon(1e-14));
}

TEST_CASE("truncation bound enforces its window preconditions") {
  // a must not exceed (2*norm_ainv)^(-alpha), b must reach (2*norm_a)^alpha.
  CHECK_THROWS_AS(truncation_error_bound(norms_of(1.0, 1.0), 0.5, 0.9, 4.0),
                  PreconditionViolated);
  CHECK_THROWS_AS(truncation_error_bound(norms_of(1.0, 1.0), 0.5, 0.25, 1.1),
                  PreconditionViolated);
}

TEST_CASE("the dedicated right-tail bound beats the comparison bound") {
  // The sharpened constant (3-2a)/(2-a) < 2 makes the bound strictly smaller
  // for every valid alpha and admissible window.
  RandomStream rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    const double alpha = 0.05 + 0.9 * rng.next_unit();
    const double norm_a = std::exp(4.0 * rng.next_symmetric());
    const double b_min = std::pow(2.0 * norm_a, alpha);
    const double b = b_min * (1.0 + 10.0 * rng.next_unit());
    const TruncationBound bound =
        truncation_error_bound(norms_of(norm_a, 1.0 / norm_a), alpha,
                               0.5 * std::pow(2.0 / norm_a, -alpha) /* valid a */, b);
    const double loose = right_tail_comparison_bound(norm_a, alpha, b);
    CHECK(bound.right < loose);
  }
}

TEST_CASE("integrand values match the node formula and the frozen sample") {
  // x = 1, lambda = 4, alpha = 0.5; the matrix integrand entry is
  // coeff/(sigma + 4) and the scalar form adds sin(alpha*pi)*lambda/2.
  DenseMatrix a(1);
  a(0, 0) = 4.0;
  const DenseMatrix f = de_integrand(a, 0.5, 1.0);
  CHECK(f(0, 0) == doctest::Approx(0.37579913080921439751).epsilon(1e-14));
  CHECK(f_de_scalar(1.0, 4.0, 0.5) ==
        doctest::Approx(0.75159826161842879502).epsilon(1e-14));

  const DeNode node = de_node(1.0, 0.5);
  CHECK(node.coeff / (node.sigma + 4.0) == doctest::Approx(f(0, 0)).epsilon(1e-15));
}

TEST_CASE("integrand equals substitution times the t-domain resolvent") {
  // F_de(x) = t'(x) * F(t(x)) with t = exp(alpha*pi*sinh(x)/2): check
  // against an explicit evaluation of both factors.
  const double alpha = 0.3;
  const double pi = 3.14159265358979323846;
  DenseMatrix a(2);
  a(0, 0) = 2.0; a(0, 1) = 0.5; a(1, 0) = 0.5; a(1, 1) = 1.0;
  for (double x : {-1.5, -0.25, 0.0, 0.8, 2.1}) {
    const double t = std::exp(alpha * pi * std::sinh(x) / 2.0);
    const double tprime = t * alpha * pi * std::cosh(x) / 2.0;
    const double sigma = std::pow(t, 1.0 / alpha);
    const DenseMatrix resolvent =
        lu_solve_shifted(a, sigma, DenseMatrix::identity(2));
    // The transform factor alpha*pi/2 of t'(x) is carried by the outer
    // prefactor sin(alpha*pi)/2 instead of the integrand, so the integrand
    // equals t'(x) * resolvent rescaled by 2/(alpha*pi).
    const DenseMatrix expected = (tprime * 2.0 / (alpha * pi)) * resolvent;
    const DenseMatrix got = de_integrand(a, alpha, x);
    DenseMatrix diff = got - expected;
    CHECK(diff.frobenius_norm() <= 1e-13 * expected.frobenius_norm());
  }
}

TEST_CASE("oversized abscissas raise a shift overflow") {
  CHECK_THROWS_AS(de_node(8.0, 0.5), ShiftOverflow);
}

TEST_CASE("scalar integrand underflows gracefully in the far tails") {
  CHECK(f_de_scalar(-8.0, 2.0, 0.5) >= 0.0);
  CHECK(f_de_scalar(-8.0, 2.0, 0.5) <= 1e-300);
  CHECK(f_de_scalar(8.0, 2.0, 0.5) >= 0.0);
  CHECK(f_de_scalar(8.0, 2.0, 0.5) <= 1e-100);
}

TEST_CASE("tolerance mapping halves the budget and applies the norm slack") {
  const ToleranceSpec abs0 = ToleranceSpec::absolute(1e-6, 0.0);
  CHECK(abs0.eps_effective == doctest::Approx(5e-7).epsilon(1e-15));
  CHECK(abs0.mode == ToleranceSpec::Mode::absolute);

  // With norm slack 1e-3 the compensation shrinks eps a little further.
  const ToleranceSpec abs1 = ToleranceSpec::absolute(1e-6, 1e-3);
  CHECK(abs1.eps_effective <
        abs0.eps_effective * (1 + 1e-12));
  CHECK(abs1.eps_effective ==
        doctest::Approx(1e-6 / (1.0 + 1.0 / (1.0 - 1e-3))).epsilon(1e-12));

  // Relative mode additionally scales by the spectral lower bound to alpha.
  const double rho = 4.0, alpha = 0.5;
  const ToleranceSpec rel = ToleranceSpec::relative(1e-6, 1e-3, rho, alpha);
  CHECK(rel.mode == ToleranceSpec::Mode::relative);
  CHECK(rel.eps_effective ==
        doctest::Approx(abs1.eps_effective * std::pow(rho, alpha)).epsilon(1e-12));
}

TEST_CASE("fixed rule converges to the square root of a 2x2 matrix") {
  DenseMatrix a(2);
  a(0, 0) = 4.0; a(0, 1) = 1.0; a(1, 0) = 1.0; a(1, 1) = 3.0;
  const NormEstimates norms = estimate_norms(a, 1e-6);
  const TruncationInterval iv = get_interval(norms, 0.5, 1e-12);
  const QuadratureReport rep = de_fixed(a, 0.5, iv, 200);
  const DenseMatrix root = rep.value;
  const DenseMatrix squared = root * root;
  DenseMatrix diff = squared - a;
  CHECK(diff.frobenius_norm() <= 1e-11 * a.frobenius_norm());
  CHECK(rep.m == 200);
  CHECK(rep.evals == 200);
  CHECK(rep.level == -1);
}

TEST_CASE("refinement reproduces the direct sum on the halved mesh") {
  const DenseMatrix a = gen_spd(12, 40.0, 31);
  const double alpha = 0.4;
  const NormEstimates norms = estimate_norms(a, 1e-6);
  const TruncationInterval iv = get_interval(norms, alpha, 1e-10);

  const int m0 = 9;
  const double h0 = (iv.r - iv.l) / (m0 - 1);
  // Direct trapezoid sums at the coarse and halved meshes.
  auto direct_sum = [&](int m) {
    const double h = (iv.r - iv.l) / (m - 1);
    DenseMatrix sum(a.dim());
    for (int k = 0; k < m; ++k) {
      const DenseMatrix f = de_integrand(a, alpha, iv.l + k * h);
      const double w = (k == 0 || k == m - 1) ? 0.5 : 1.0;
      DenseMatrix scaled = w * f;
      scaled *= h;
      sum += scaled;
    }
    return sum;
  };

  const DenseMatrix coarse = direct_sum(m0);
  const RefineResult fine = trapezoid_refine(a, alpha, iv.l, h0, coarse, m0);
  CHECK(fine.m == 2 * m0 - 1);
  CHECK(fine.h == doctest::Approx(h0 / 2.0).epsilon(1e-15));
  const DenseMatrix direct = direct_sum(2 * m0 - 1);
  DenseMatrix diff = fine.sum - direct;
  CHECK(diff.frobenius_norm() <= 1e-13 * direct.frobenius_norm());
}

TEST_CASE("adaptive run on the identity stops on the measured schedule") {
  // A = I, alpha = 0.3, eps = 1e-8, m0 = 8: eps_effective = 5e-9, so the
  // loop refines until the update estimate reaches 2.5e-9. The first three
  // measured estimates are frozen; the fourth crosses the threshold.
  const DenseMatrix eye = DenseMatrix::identity(3);
  const ToleranceSpec tol = ToleranceSpec::absolute(1e-8, 0.0);
  const QuadratureReport rep = de_adaptive(eye, 0.3, tol, norms_of(1.0, 1.0, 0.0), 8);
  CHECK(rep.level == 4);
  CHECK(rep.m == 113);                   // 8 -> 15 -> 29 -> 57 -> 113
  CHECK(rep.evals == 113);               // nested points are reused
  REQUIRE(rep.est_history.size() == 4);
  CHECK(rep.est_history[0] == doctest::Approx(1.808e-3).epsilon(0.01));
  CHECK(rep.est_history[1] == doctest::Approx(3.933e-7).epsilon(0.01));
  CHECK(rep.est_history[2] == doctest::Approx(4.710e-9).epsilon(0.01));
  CHECK(rep.est_history[3] <= tol.eps_effective / 2.0);
  CHECK(*rep.est_error <= tol.eps_effective / 2.0);

  // I^alpha = I.
  DenseMatrix diff = rep.value - eye;
  CHECK(diff.frobenius_norm() <= 1e-8);
}

TEST_CASE("adaptive evals follow the doubling arithmetic") {
  const DenseMatrix a = gen_spd(10, 100.0, 7);
  const NormEstimates norms = estimate_norms(a, 1e-6);
  const ToleranceSpec tol = ToleranceSpec::absolute(1e-11, 0.0);
  const QuadratureReport rep = de_adaptive(a, 0.5, tol, norms, 8, 100000);
  CHECK(rep.level >= 1);
  // m after s levels is 2^s*(m0-1)+1 and every abscissa is evaluated once.
  CHECK(rep.m == (1 << rep.level) * 7 + 1);
  CHECK(rep.evals == rep.m);
  // History entries shrink monotonically at these levels.
  for (size_t i = 1; i < rep.est_history.size(); ++i)
    CHECK(rep.est_history[i] < rep.est_history[i - 1]);
}

TEST_CASE("adaptive budget is checked before it would be overspent") {
  const DenseMatrix a = gen_spd(10, 1000.0, 3);
  const NormEstimates norms = estimate_norms(a, 1e-6);
  const ToleranceSpec tol = ToleranceSpec::absolute(1e-13, 0.0);
  // Budget equal to the seed mesh: the first refinement would exceed it.
  try {
    de_adaptive(a, 0.5, tol, norms, 8, 8);
    FAIL("expected the evaluation budget to be exhausted");
  } catch (const EvalBudgetExceeded& e) {
    REQUIRE(e.matrix_report.has_value());
    CHECK(e.matrix_report->evals == 8);  // flagged at exactly the cap
    CHECK(e.matrix_report->m == 8);
  }
}

TEST_CASE("adaptive result matches the spectral oracle") {
  const DenseMatrix a = gen_spd(40, 1e4, 19);
  const NormEstimates norms = estimate_norms(a, 1e-6);
  for (double alpha : {0.2, 0.5, 0.8}) {
    const ToleranceSpec tol = ToleranceSpec::absolute(1e-9, 0.0);
    const QuadratureReport rep = de_adaptive(a, alpha, tol, norms, 8, 100000);
    const DenseMatrix oracle = hpd_power(a, alpha);
    CHECK(rel_two_norm_error(rep.value, oracle) <= 1e-9);
  }
}

TEST_CASE("two-norm stopping mode also reaches the tolerance") {
  const DenseMatrix a = gen_spd(20, 100.0, 23);
  const NormEstimates norms = estimate_norms(a, 1e-6);
  const ToleranceSpec tol = ToleranceSpec::absolute(1e-8, 0.0);
  const QuadratureReport rep =
      de_adaptive(a, 0.5, tol, norms, 8, 100000, StoppingNorm::two);
  const DenseMatrix oracle = hpd_power(a, 0.5);
  CHECK(rel_two_norm_error(rep.value, oracle) <= 1e-8);
}

TEST_CASE("general exponents split into integer and fractional factors") {
  const DenseMatrix a = gen_spd(15, 30.0, 41);
  const NormEstimates norms = estimate_norms(a, 1e-6);
  const ToleranceSpec tol = ToleranceSpec::absolute(1e-11, 0.0);

  SUBCASE("alpha = 2.5") {
    const DenseMatrix got = real_power(a, 2.5, tol, norms);
    const DenseMatrix want = hpd_power(a, 2.5);
    CHECK(rel_two_norm_error(got, want) <= 1e-9);
  }
  SUBCASE("alpha = -0.5") {
    const DenseMatrix got = real_power(a, -0.5, tol, norms);
    const DenseMatrix want = hpd_power(a, -0.5);
    CHECK(rel_two_norm_error(got, want) <= 1e-9);
  }
  SUBCASE("alpha = 3 uses no quadrature") {
    const DenseMatrix got = real_power(a, 3.0, tol, norms);
    const DenseMatrix want = (a * a) * a;
    CHECK(rel_two_norm_error(got, want) <= 1e-13);
  }
}
