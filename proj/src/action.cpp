#include "powquad/action.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "powquad/errors.hpp"
#include "powquad/gauss_jacobi.hpp"

namespace powquad {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) throw AlphaOutOfRange(alpha);
}

Vector sub(const Vector& a, const Vector& b) {
  Vector out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

}  // namespace

DenseLuOperator::DenseLuOperator(DenseMatrix a)
    : a_(std::move(a)), cached_sigma_(std::numeric_limits<double>::quiet_NaN()) {
  a_.validate();
}

Vector DenseLuOperator::solve(double sigma, const Vector& rhs) {
  if (!cached_lu_ || sigma != cached_sigma_) {
    cached_lu_ = std::make_unique<LuFactorization>(a_, sigma);
    cached_sigma_ = sigma;
  }
  ++solves_;
  return cached_lu_->solve(rhs);
}

Vector DenseLuOperator::apply(const Vector& x) const { return a_ * x; }

SparseCgOperator::SparseCgOperator(CsrMatrix a, double cg_tol, int max_iters)
    : a_(std::move(a)), cg_tol_(cg_tol), max_iters_(max_iters) {}

Vector SparseCgOperator::solve(double sigma, const Vector& rhs) {
  ++solves_;
  return cg_solve_shifted(a_, sigma, rhs, cg_tol_, max_iters_).x;
}

Vector SparseCgOperator::apply(const Vector& x) const { return a_.multiply(x); }

CallbackOperator::CallbackOperator(int n, SolveFn solve, ApplyFn apply)
    : n_(n), solve_(std::move(solve)), apply_(std::move(apply)) {
  if (n <= 0) throw ParameterOutOfRange("operator dimension must be positive");
  if (!solve_ || !apply_) throw ParameterOutOfRange("both callbacks must be set");
}

Vector CallbackOperator::solve(double sigma, const Vector& rhs) {
  ++solves_;
  return solve_(sigma, rhs);
}

Vector CallbackOperator::apply(const Vector& x) const { return apply_(x); }

namespace {

// t_sum += sum_k trapezoid_w_k * coeff(x_k) * (sigma(x_k) I + A)^{-1} b.
void accumulate_action_nodes(ShiftedLinearOperator& op, const Vector& b, double alpha,
                             const std::vector<double>& xs, const std::vector<double>& ws,
                             Vector& t_sum) {
  for (size_t k = 0; k < xs.size(); ++k) {
    const DeNode node = de_node(xs[k], alpha);
    const double w = ws[k] * node.coeff;
    if (w == 0.0) continue;
    Vector y = op.solve(node.sigma, b);
    axpy(w, y, t_sum);
  }
}

}  // namespace

ActionReport de_action_adaptive(ShiftedLinearOperator& op, const Vector& b, double alpha,
                                const ToleranceSpec& tol, const NormEstimates& norms, int m0,
                                int max_levels, long max_evals) {
  require_alpha(alpha);
  if (static_cast<int>(b.size()) != op.dim())
    throw ParameterOutOfRange("vector length does not match the operator dimension");
  if (m0 < 2) throw ParameterOutOfRange("m0 must be at least 2");
  if (max_evals < m0) throw ParameterOutOfRange("max_evals must cover the initial mesh");

  const TruncationInterval interval = get_interval(norms, alpha, tol.eps_effective);
  const double prefactor = std::sin(alpha * kPi) / 2.0;

  ActionReport rep;
  rep.interval = interval;
  rep.m = m0;
  rep.level = 0;  // refinements completed so far
  rep.evals = m0;

  double h = (interval.r - interval.l) / (m0 - 1);
  std::vector<double> xs(m0), ws(m0, h);
  for (int k = 0; k < m0; ++k) xs[k] = interval.l + k * h;
  ws.front() = ws.back() = h / 2.0;

  Vector t_sum(b.size(), 0.0);
  accumulate_action_nodes(op, b, alpha, xs, ws, t_sum);
  Vector a_t = op.apply(t_sum);
  rep.value = a_t;
  scale_inplace(rep.value, prefactor);

  while (true) {
    if (rep.evals + (rep.m - 1) > max_evals) {
      rep.budget_exhausted = true;
      throw EvalBudgetExceeded(rep);
    }
    if (rep.level >= max_levels)
      throw ConvergenceFailure("mesh refinement cap reached before the estimate settled");

    const double h_next = h / 2.0;
    std::vector<double> mid_xs(rep.m - 1), mid_ws(rep.m - 1, h_next);
    for (int k = 1; k < rep.m; ++k) mid_xs[k - 1] = interval.l + (2 * k - 1) * h_next;
    scale_inplace(t_sum, 0.5);
    accumulate_action_nodes(op, b, alpha, mid_xs, mid_ws, t_sum);

    rep.evals += rep.m - 1;
    rep.m = 2 * rep.m - 1;
    rep.level += 1;
    h = h_next;

    Vector a_t_next = op.apply(t_sum);
    const double est = prefactor * norm2(sub(a_t_next, a_t));
    a_t = std::move(a_t_next);
    rep.value = a_t;
    scale_inplace(rep.value, prefactor);
    rep.est_error = est;
    rep.est_history.push_back(est);
    if (est <= tol.eps_effective / 2.0) return rep;
  }
}

ActionReport gj_action_doubling(ShiftedLinearOperator& op, const Vector& b, double alpha,
                                const ToleranceSpec& tol, GjKind which, int m0,
                                int max_doublings, long max_evals) {
  require_alpha(alpha);
  if (static_cast<int>(b.size()) != op.dim())
    throw ParameterOutOfRange("vector length does not match the operator dimension");
  if (m0 < 1) throw ParameterOutOfRange("m0 must be at least 1");
  if (max_evals < m0) throw ParameterOutOfRange("max_evals must cover the first stage");

  const double beta = which == GjKind::one ? 1.0 / alpha - 2.0 : alpha - 1.0;
  const double gamma = which == GjKind::one ? 0.0 : -alpha;
  const double prefactor = which == GjKind::one
                               ? 2.0 * std::sin(alpha * kPi) / (alpha * kPi)
                               : 2.0 * std::sin(alpha * kPi) / kPi;

  auto stage = [&](int m) {
    const JacobiRule rule = jacobi_rule(m, beta, gamma);
    Vector t_sum(b.size(), 0.0);
    for (int k = 0; k < m; ++k) {
      const double u = rule.nodes[k];
      double sigma, w;
      if (which == GjKind::one) {
        sigma = std::pow((1.0 + u) / (1.0 - u), 1.0 / alpha);
        w = rule.weights[k] * std::pow(1.0 - u, -1.0 / alpha);
      } else {
        sigma = (1.0 - u) / (1.0 + u);
        w = rule.weights[k] / (1.0 + u);
      }
      Vector y = op.solve(sigma, b);
      axpy(w, y, t_sum);
    }
    Vector x = op.apply(t_sum);
    scale_inplace(x, prefactor);
    return x;
  };

  ActionReport rep;
  rep.m = m0;
  rep.level = 0;  // doublings completed so far
  rep.evals = m0;
  Vector x_prev = stage(m0);
  rep.value = x_prev;

  for (int d = 0; d < max_doublings; ++d) {
    const int m_next = 2 * rep.m;
    if (rep.evals + m_next > max_evals) {
      rep.budget_exhausted = true;
      throw EvalBudgetExceeded(rep);
    }
    Vector x_next = stage(m_next);
    rep.evals += m_next;
    rep.m = m_next;
    rep.level += 1;
    const double est = norm2(sub(x_next, x_prev));
    rep.est_error = est;
    rep.est_history.push_back(est);
    rep.value = x_next;
    if (est <= tol.eps_effective) return rep;
    x_prev = std::move(x_next);
  }
  throw ConvergenceFailure("order doubling cap reached before the estimate settled");
}

}  // namespace powquad
