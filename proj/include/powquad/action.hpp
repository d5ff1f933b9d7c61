#ifndef POWQUAD_ACTION_HPP
#define POWQUAD_ACTION_HPP

#include <functional>
#include <memory>

#include "powquad/de.hpp"
#include "powquad/linalg.hpp"
#include "powquad/matrix.hpp"

namespace powquad {

/// Matrix access used by the vector-valued drivers: the matrix is only ever
/// touched through shifted solves (sigma*I + A) x = rhs and plain products
/// A x, so large or implicitly-defined operators plug in without forming a
/// dense copy.
class ShiftedLinearOperator {
 public:
  virtual ~ShiftedLinearOperator() = default;
  virtual int dim() const = 0;
  /// Solves (sigma*I + A) x = rhs.
  virtual Vector solve(double sigma, const Vector& rhs) = 0;
  /// Applies A x.
  virtual Vector apply(const Vector& x) const = 0;
  /// Number of shifted solves performed so far.
  long long solve_count() const { return solves_; }

 protected:
  long long solves_ = 0;
};

/// Dense operator: each new shift is factored once and cached by value.
class DenseLuOperator : public ShiftedLinearOperator {
 public:
  explicit DenseLuOperator(DenseMatrix a);
  int dim() const override { return a_.dim(); }
  Vector solve(double sigma, const Vector& rhs) override;
  Vector apply(const Vector& x) const override;
  const DenseMatrix& matrix() const { return a_; }

 private:
  DenseMatrix a_;
  double cached_sigma_;
  std::unique_ptr<LuFactorization> cached_lu_;
};

/// Sparse symmetric positive definite operator: shifted solves run through
/// conjugate gradients with tolerance cg_tol relative to the right-hand side.
class SparseCgOperator : public ShiftedLinearOperator {
 public:
  SparseCgOperator(CsrMatrix a, double cg_tol = 1e-10, int max_iters = 0);
  int dim() const override { return a_.dim(); }
  Vector solve(double sigma, const Vector& rhs) override;
  Vector apply(const Vector& x) const override;

 private:
  CsrMatrix a_;
  double cg_tol_;
  int max_iters_;
};

/// Wraps user-supplied callables; useful for operators that exist only as
/// procedures.
class CallbackOperator : public ShiftedLinearOperator {
 public:
  using SolveFn = std::function<Vector(double, const Vector&)>;
  using ApplyFn = std::function<Vector(const Vector&)>;
  CallbackOperator(int n, SolveFn solve, ApplyFn apply);
  int dim() const override { return n_; }
  Vector solve(double sigma, const Vector& rhs) override;
  Vector apply(const Vector& x) const override;

 private:
  int n_;
  SolveFn solve_;
  ApplyFn apply_;
};

/// Adaptive double-exponential evaluation of A^alpha b without forming
/// A^alpha: mirrors the matrix driver but carries vectors, so memory stays
/// O(dim) plus the operator itself. Stops when the successive-level estimate
/// sin(alpha*pi)/2 * ||A t_{s+1} - A t_s||_2 falls to eps_effective/2.
/// max_evals caps integrand evaluations; exceeding it throws
/// EvalBudgetExceeded with the best report attached.
ActionReport de_action_adaptive(ShiftedLinearOperator& op, const Vector& b, double alpha,
                                const ToleranceSpec& tol, const NormEstimates& norms,
                                int m0 = 8, int max_levels = 30, long max_evals = 1000000);

/// Fixed-order Gauss-Jacobi action with order doubling: runs the chosen
/// rule at m0, 2*m0, 4*m0, ... until the successive difference
/// ||x_{2m} - x_m||_2 <= eps_effective, under the same budget policy.
/// which selects the +1 (gj1, unit-fraction exponents) or -1 (gj2) family.
enum class GjKind { one, two };
ActionReport gj_action_doubling(ShiftedLinearOperator& op, const Vector& b, double alpha,
                                const ToleranceSpec& tol, GjKind which, int m0 = 8,
                                int max_doublings = 12, long max_evals = 1000000);

}  // namespace powquad

#endif  // POWQUAD_ACTION_HPP
