#ifndef POWQUAD_DE_HPP
#define POWQUAD_DE_HPP

#include <optional>
#include <vector>

#include "powquad/linalg.hpp"
#include "powquad/matrix.hpp"

namespace powquad {

// Computes A^alpha for alpha in (0, 1) from the resolvent integral
//   A^alpha = sin(alpha*pi)/(alpha*pi) * A * int_0^inf (t^{1/alpha} I + A)^{-1} dt,
// mapped by t = exp(alpha*pi*sinh(x)/2) so the trapezoid rule converges at a
// double-exponential rate. Each abscissa costs one shifted solve with
// sigma = exp(pi*sinh(x)/2).

/// Which of the two competing lower/upper bound formulas fixed an endpoint.
enum class EndpointBranch { tolerance, norm };

/// Truncated integration window. a, b bound the t-domain integral,
/// l = asinh(2*ln(a)/(alpha*pi)) and r = asinh(2*ln(b)/(alpha*pi)) the
/// x-domain one; l < r always holds on successful construction.
struct TruncationInterval {
  double a = 0.0;
  double b = 0.0;
  double l = 0.0;
  double r = 0.0;
  EndpointBranch a_branch = EndpointBranch::tolerance;
  EndpointBranch b_branch = EndpointBranch::tolerance;
};

/// Chooses [l, r] so the two tail integrals together stay below eps/2:
///   a = min{ eps/4 * pi*alpha*(1+alpha) / (sin(alpha*pi)*(1+2*alpha)),
///            (2*norm_ainv)^(-alpha) }
///   b = max{ [eps/4 * pi*(1-alpha)*(2-alpha) /
///             (sin(alpha*pi)*(3-2*alpha)*norm_a)]^(alpha/(alpha-1)),
///            (2*norm_a)^alpha }.
/// Throws AlphaOutOfRange, ParameterOutOfRange (eps <= 0), TolTooLarge (a >= b).
TruncationInterval get_interval(const NormEstimates& norms, double alpha, double eps);

/// Tail bounds for the truncation to [a, b] in the t-domain, valid when
/// a <= (2*norm_ainv)^(-alpha) and b >= (2*norm_a)^alpha:
///   left  = sin(alpha*pi)*(alpha + (1+alpha)*norm_identity)
///           / (alpha*pi*(1+alpha)) * a
///   right = sin(alpha*pi)*(3-2*alpha)*norm_a
///           / (pi*(1-alpha)*(2-alpha)) * b^(1-1/alpha).
/// Throws PreconditionViolated naming the failed side.
struct TruncationBound {
  double left = 0.0;
  double right = 0.0;
  double total = 0.0;
};
TruncationBound truncation_error_bound(const NormEstimates& norms, double alpha, double a,
                                       double b, double norm_identity = 1.0);

/// Looser right-tail bound kept for comparison purposes; strictly larger than
/// TruncationBound::right for every admissible input:
///   2*sin(alpha*pi)*norm_a / (pi*(1-alpha)) * b^(1-1/alpha).
double right_tail_comparison_bound(double norm_a, double alpha, double b);

/// Shift and scalar weight of one integrand evaluation:
/// F(x) = coeff * (sigma*I + A)^{-1} with sigma = exp(pi*sinh(x)/2) and
/// coeff = sigma^alpha * cosh(x). Throws ShiftOverflow when sigma would
/// exceed the double range.
struct DeNode {
  double sigma = 0.0;
  double coeff = 0.0;
};
DeNode de_node(double x, double alpha);

/// One integrand evaluation as a matrix, for diagnostics and tests.
DenseMatrix de_integrand(const DenseMatrix& a, double alpha, double x);

/// Scalar integrand of the same transform for the eigenvalue lambda,
/// including the sin(alpha*pi)*lambda/2 prefactor; evaluated in log space so
/// large |x| underflows to zero instead of overflowing.
double f_de_scalar(double x, double lambda, double alpha);

/// How the refinement loop measures the update size.
enum class StoppingNorm { frobenius, two };

/// Result of a quadrature run. level is the number of completed mesh
/// refinements (-1 for a fixed-mesh run); evals counts shifted solves.
struct QuadratureReport {
  DenseMatrix value;
  int m = 0;
  int level = -1;
  std::optional<double> est_error;
  std::vector<double> est_history;
  long evals = 0;
  TruncationInterval interval;
};

/// Vector-variant result for A^alpha * b runs.
struct ActionReport {
  Vector value;
  int m = 0;
  int level = -1;
  std::optional<double> est_error;
  std::vector<double> est_history;
  long evals = 0;
  TruncationInterval interval;
  bool budget_exhausted = false;
};

/// The evaluation budget ran out before the stopping test passed; carries the
/// best result reached so far.
class EvalBudgetExceeded : public Error {
 public:
  explicit EvalBudgetExceeded(QuadratureReport best)
      : Error("evaluation budget exhausted"), matrix_report(std::move(best)) {}
  explicit EvalBudgetExceeded(ActionReport best)
      : Error("evaluation budget exhausted"), action_report(std::move(best)) {}
  std::optional<QuadratureReport> matrix_report;
  std::optional<ActionReport> action_report;
};

/// Requested accuracy, pre-mapped to the value the quadrature driver uses.
/// absolute: eps_effective = eps_user / (1 + 1/(1 - norm_rel_tol)), which
/// keeps the truncation half of the budget valid when the norms carry a
/// relative error up to norm_rel_tol.
/// relative: the absolute mapping additionally multiplied by
/// spectral_radius_lb^alpha, so eps_user bounds the error relative to the
/// dominant-eigenvalue scale of A^alpha.
struct ToleranceSpec {
  enum class Mode { absolute, relative };
  Mode mode = Mode::absolute;
  double eps_user = 0.0;
  double norm_rel_tol = 0.0;
  double eps_effective = 0.0;

  static ToleranceSpec absolute(double eps_user, double norm_rel_tol = 0.0);
  static ToleranceSpec relative(double eps_user, double norm_rel_tol,
                                double spectral_radius_lb, double alpha);
};

/// Fixed-mesh rule on [l, r] with m >= 2 points:
///   h = (r - l)/(m - 1),
///   T = h/2*(F(l) + F(r)) + h*sum_{k=1}^{m-2} F(l + k*h),
///   value = sin(alpha*pi)/2 * A * T.
QuadratureReport de_fixed(const DenseMatrix& a, double alpha,
                          const TruncationInterval& interval, int m);

/// One mesh halving that reuses every previous evaluation:
///   T_next = T_prev/2 + h_next * sum_{k=1}^{m_prev-1} F(l + (2k-1)*h_next),
/// with h_next = h_prev/2 and m_next = 2*m_prev - 1.
struct RefineResult {
  DenseMatrix sum;
  double h = 0.0;
  int m = 0;
};
RefineResult trapezoid_refine(const DenseMatrix& a, double alpha, double l, double h_prev,
                              const DenseMatrix& sum_prev, int m_prev);

/// Mesh-doubling driver: starts from m0 points, halves h until the update
/// estimate sin(alpha*pi)/2 * ||A*T_{s+1} - A*T_s|| drops to
/// eps_effective/2, so the total error (truncation plus discretization)
/// stays below eps_effective. Throws EvalBudgetExceeded when another
/// refinement would be needed but evals already reached max_evals.
QuadratureReport de_adaptive(const DenseMatrix& a, double alpha, const ToleranceSpec& tol,
                             const NormEstimates& norms, int m0 = 8, long max_evals = 1000,
                             StoppingNorm stopping_norm = StoppingNorm::frobenius);

/// General real exponents: A^alpha = A^floor(alpha) * A^(alpha - floor(alpha)),
/// with the fractional factor from de_adaptive and integer powers by repeated
/// squaring (negative ones through the LU inverse). For integer alpha no
/// quadrature runs at all.
DenseMatrix real_power(const DenseMatrix& a, double alpha, const ToleranceSpec& tol,
                       const NormEstimates& norms, int m0 = 8, long max_evals = 1000);

}  // namespace powquad

#endif  // POWQUAD_DE_HPP
