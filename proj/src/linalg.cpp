#include "powquad/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

namespace powquad {

namespace {

// Deterministic start vectors for the power iterations (splitmix64 stream).
Vector deterministic_unit_vector(int n, uint64_t seed) {
  Vector v(n);
  uint64_t s = seed;
  for (int i = 0; i < n; ++i) {
    s += 0x9E3779B97F4A7C15ull;
    uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
    v[i] = 2.0 * (static_cast<double>(z >> 11) * 0x1.0p-53) - 1.0;
  }
  double nv = norm2(v);
  if (nv == 0.0) v[0] = nv = 1.0;
  scale_inplace(v, 1.0 / nv);
  return v;
}

// Rayleigh-quotient power iteration with geometric extrapolation of the
// remaining error. apply() must implement a symmetric positive operator.
template <typename Apply>
double power_iterate(int n, double rel_tol, int max_iters, const char* label, Apply&& apply) {
  Vector v = deterministic_unit_vector(n, 0x1234ABCDu);
  double theta_prev = 0.0, theta_last = 0.0;
  double diff_prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k < max_iters; ++k) {
    Vector w = apply(v);
    const double theta = dot(v, w);
    const double nw = norm2(w);
    if (nw == 0.0) return 0.0;
    scale_inplace(w, 1.0 / nw);
    v = std::move(w);
    const double diff = std::abs(theta - theta_last);
    if (k >= 3) {
      if (diff == 0.0) return theta;
      double ratio = diff / diff_prev;
      ratio = std::clamp(ratio, 0.01, 0.9999);
      const double remaining = diff * ratio / (1.0 - ratio);
      if (remaining <= 0.2 * rel_tol * std::abs(theta)) return theta;
    }
    diff_prev = diff;
    theta_prev = theta_last;
    theta_last = theta;
  }
  std::ostringstream os;
  os << label << " power iteration did not settle within " << max_iters
     << " iterations (last iterates " << theta_prev << ", " << theta_last << ")";
  throw ConvergenceFailure(os.str());
}

bool is_symmetric(const DenseMatrix& a, double rel = 1e-12) {
  const int n = a.dim();
  double off = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double d = a(i, j) - a(j, i);
      off += d * d;
    }
  const double fro = a.frobenius_norm();
  return std::sqrt(off) <= rel * (fro > 0.0 ? fro : 1.0);
}

}  // namespace

LuFactorization::LuFactorization(const DenseMatrix& m, double sigma, double pivot_tol_factor)
    : n_(m.dim()), sigma_(sigma), lu_(m.data()), perm_(m.dim()) {
  if (!std::isfinite(sigma)) throw ShiftOverflow(0.0);
  for (int i = 0; i < n_; ++i) lu_[static_cast<size_t>(i) * n_ + i] += sigma;

  double max_abs = 0.0;
  for (double v : lu_) max_abs = std::max(max_abs, std::abs(v));
  const double pivot_floor =
      pivot_tol_factor * n_ * std::numeric_limits<double>::epsilon() * max_abs;

  auto at = [this](int i, int j) -> double& { return lu_[static_cast<size_t>(i) * n_ + j]; };
  for (int k = 0; k < n_; ++k) {
    int p = k;
    double best = std::abs(at(k, k));
    for (int i = k + 1; i < n_; ++i) {
      const double cand = std::abs(at(i, k));
      if (cand > best) {
        best = cand;
        p = i;
      }
    }
    perm_[k] = p;
    if (p != k)
      for (int j = 0; j < n_; ++j) std::swap(at(k, j), at(p, j));
    if (best <= pivot_floor) throw SingularShiftedSystem(sigma, k);
    const double pivot = at(k, k);
    for (int i = k + 1; i < n_; ++i) {
      const double l = at(i, k) / pivot;
      at(i, k) = l;
      if (l == 0.0) continue;
      for (int j = k + 1; j < n_; ++j) at(i, j) -= l * at(k, j);
    }
  }
}

Vector LuFactorization::solve(Vector rhs) const {
  auto at = [this](int i, int j) { return lu_[static_cast<size_t>(i) * n_ + j]; };
  for (int k = 0; k < n_; ++k)
    if (perm_[k] != k) std::swap(rhs[k], rhs[perm_[k]]);
  for (int i = 1; i < n_; ++i) {
    double s = rhs[i];
    for (int j = 0; j < i; ++j) s -= at(i, j) * rhs[j];
    rhs[i] = s;
  }
  for (int i = n_ - 1; i >= 0; --i) {
    double s = rhs[i];
    for (int j = i + 1; j < n_; ++j) s -= at(i, j) * rhs[j];
    rhs[i] = s / at(i, i);
  }
  return rhs;
}

Vector LuFactorization::solve_transposed(Vector rhs) const {
  auto at = [this](int i, int j) { return lu_[static_cast<size_t>(i) * n_ + j]; };
  // (sigma*I + M)^T = U^T L^T P with PA = LU; solve the two triangular
  // systems, then undo the permutation.
  for (int i = 0; i < n_; ++i) {
    double s = rhs[i];
    for (int j = 0; j < i; ++j) s -= at(j, i) * rhs[j];
    rhs[i] = s / at(i, i);
  }
  for (int i = n_ - 1; i >= 0; --i) {
    double s = rhs[i];
    for (int j = i + 1; j < n_; ++j) s -= at(j, i) * rhs[j];
    rhs[i] = s;
  }
  for (int k = n_ - 1; k >= 0; --k)
    if (perm_[k] != k) std::swap(rhs[k], rhs[perm_[k]]);
  return rhs;
}

DenseMatrix LuFactorization::solve(const DenseMatrix& b) const {
  DenseMatrix x(n_);
  Vector col(n_);
  for (int j = 0; j < n_; ++j) {
    for (int i = 0; i < n_; ++i) col[i] = b(i, j);
    col = solve(std::move(col));
    for (int i = 0; i < n_; ++i) x(i, j) = col[i];
  }
  return x;
}

DenseMatrix lu_solve_shifted(const DenseMatrix& m, double sigma, const DenseMatrix& b) {
  return LuFactorization(m, sigma).solve(b);
}

Vector lu_solve_shifted(const DenseMatrix& m, double sigma, const Vector& b) {
  return LuFactorization(m, sigma).solve(b);
}

void NormEstimates::validate() const {
  if (!(norm_a > 0.0) || !std::isfinite(norm_a))
    throw ParameterOutOfRange("norm_a must be positive and finite");
  if (!(norm_ainv > 0.0) || !std::isfinite(norm_ainv))
    throw ParameterOutOfRange("norm_ainv must be positive and finite");
  if (!(rel_tol >= 0.0) || !(rel_tol < 0.5))
    throw ParameterOutOfRange("rel_tol must lie in [0, 0.5)");
  if (norm_a * norm_ainv < 1.0 - 2.0 * rel_tol)
    throw ParameterOutOfRange("norm product below the attainable floor");
}

NormEstimates estimate_norms(const DenseMatrix& a, double rel_tol, int max_iters) {
  a.validate();
  if (!(rel_tol > 0.0) || rel_tol >= 0.5)
    throw ParameterOutOfRange("rel_tol must lie in (0, 0.5)");
  const int n = a.dim();
  if (max_iters <= 0) max_iters = 10 * n;

  const double theta_max =
      power_iterate(n, rel_tol, max_iters, "largest singular value",
                    [&](const Vector& v) { return a.transpose() * (a * v); });
  if (theta_max <= 0.0) throw SingularShiftedSystem(0.0, 0);

  LuFactorization lu(a, 0.0);
  const double theta_inv =
      power_iterate(n, rel_tol, max_iters, "smallest singular value",
                    [&](const Vector& v) { return lu.solve(lu.solve_transposed(v)); });
  if (theta_inv <= 0.0) throw SingularShiftedSystem(0.0, 0);

  NormEstimates est;
  est.norm_a = std::sqrt(theta_max);
  est.norm_ainv = std::sqrt(theta_inv);
  est.rel_tol = rel_tol;

  if (is_symmetric(a)) {
    // Symmetric: spectral radius equals the largest singular value and the
    // Rayleigh-quotient estimate approaches it from below.
    est.spectral_radius_lb = est.norm_a;
  } else {
    double theta = 0.0;
    Vector v = deterministic_unit_vector(n, 0x77AA55u);
    for (int k = 0; k < std::min(max_iters, 400); ++k) {
      Vector w = a * v;
      const double nw = norm2(w);
      if (nw == 0.0) break;
      theta = dot(v, w);
      scale_inplace(w, 1.0 / nw);
      v = std::move(w);
    }
    est.spectral_radius_lb =
        std::clamp(std::abs(theta), 1.0 / est.norm_ainv, est.norm_a);
  }
  est.validate();
  return est;
}

NormEstimates estimate_norms(const CsrMatrix& a, double rel_tol, int max_iters) {
  if (!(rel_tol > 0.0) || rel_tol >= 0.5)
    throw ParameterOutOfRange("rel_tol must lie in (0, 0.5)");
  const int n = a.dim();
  if (max_iters <= 0) max_iters = 10 * n;

  // Symmetry probe; the sparse path requires a symmetric positive definite
  // operator because the smallest eigenvalue is reached through CG.
  {
    Vector probe = deterministic_unit_vector(n, 0xF00Du);
    Vector d = a.multiply(probe);
    Vector dt = a.multiply_transposed(probe);
    double diff = 0.0, mag = 0.0;
    for (int i = 0; i < n; ++i) {
      diff += (d[i] - dt[i]) * (d[i] - dt[i]);
      mag += d[i] * d[i];
    }
    if (std::sqrt(diff) > 1e-12 * std::max(1.0, std::sqrt(mag)))
      throw NotSymmetric("sparse norm estimation requires a symmetric matrix");
  }

  const double lam_max = power_iterate(n, rel_tol, max_iters, "largest eigenvalue",
                                       [&](const Vector& v) { return a.multiply(v); });
  if (lam_max <= 0.0) throw NotSPD("largest eigenvalue estimate not positive");
  const double lam_inv =
      power_iterate(n, rel_tol, max_iters, "smallest eigenvalue", [&](const Vector& v) {
        return cg_solve_shifted(a, 0.0, v, 1e-12).x;
      });
  if (lam_inv <= 0.0) throw NotSPD("smallest eigenvalue estimate not positive");

  NormEstimates est;
  est.norm_a = lam_max;
  est.norm_ainv = lam_inv;
  est.rel_tol = rel_tol;
  est.spectral_radius_lb = lam_max;
  est.validate();
  return est;
}

SymmetricEig symmetric_eig(const DenseMatrix& a, int max_sweeps) {
  a.validate();
  const int n = a.dim();
  {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double d = a(i, j) - a(j, i);
        off += d * d;
      }
    const double fro = a.frobenius_norm();
    if (std::sqrt(off) > 1e-12 * (fro > 0.0 ? fro : 1.0))
      throw NotSymmetric("matrix is not symmetric within 1e-12 relative");
  }

  DenseMatrix w = a;
  DenseMatrix v = DenseMatrix::identity(n);
  const double fro = std::max(a.frobenius_norm(), std::numeric_limits<double>::min());
  const double stop = 1e-15 * fro;

  auto off_norm = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += w(i, j) * w(i, j);
    return std::sqrt(2.0 * s);
  };

  int sweep = 0;
  while (off_norm() > stop) {
    if (++sweep > max_sweeps)
      throw ConvergenceFailure("jacobi eigensolver exceeded its sweep cap");
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = w(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double tau = (w(q, q) - w(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int i = 0; i < n; ++i) {
          const double wip = w(i, p), wiq = w(i, q);
          w(i, p) = c * wip - s * wiq;
          w(i, q) = s * wip + c * wiq;
        }
        for (int i = 0; i < n; ++i) {
          const double wpi = w(p, i), wqi = w(q, i);
          w(p, i) = c * wpi - s * wqi;
          w(q, i) = s * wpi + c * wqi;
        }
        for (int i = 0; i < n; ++i) {
          const double vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
  }

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int i, int j) { return w(i, i) < w(j, j); });

  SymmetricEig out;
  out.eigenvalues.resize(n);
  out.vectors = DenseMatrix(n);
  for (int j = 0; j < n; ++j) {
    out.eigenvalues[j] = w(order[j], order[j]);
    for (int i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  return out;
}

double two_norm_estimate(const DenseMatrix& m, double rel_tol, int max_iters) {
  const int n = m.dim();
  Vector v = deterministic_unit_vector(n, 0xBEEF1234u);
  double sigma = 0.0;
  const DenseMatrix mt = m.transpose();
  for (int k = 0; k < max_iters; ++k) {
    Vector w = mt * (m * v);
    const double theta = dot(v, w);  // = ||Mv||^2 for unit v
    const double nw = norm2(w);
    if (nw == 0.0) return 0.0;
    scale_inplace(w, 1.0 / nw);
    v = std::move(w);
    const double next = std::sqrt(std::max(theta, 0.0));
    if (k >= 2 && std::abs(next - sigma) <= rel_tol * next) return next;
    sigma = next;
  }
  return sigma;
}

CgResult cg_solve_shifted(const CsrMatrix& a, double sigma, const Vector& y, double tol,
                          int max_iters) {
  if (!(sigma >= 0.0)) throw ParameterOutOfRange("shift must be nonnegative");
  const int n = a.dim();
  if (max_iters <= 0) max_iters = 4 * n + 20;

  auto apply = [&](const Vector& v) {
    Vector w = a.multiply(v);
    if (sigma != 0.0) axpy(sigma, v, w);
    return w;
  };

  CgResult out;
  out.x.assign(n, 0.0);
  const double ny = norm2(y);
  if (ny == 0.0) return out;

  Vector r = y;
  Vector p = r;
  double rr = dot(r, r);
  out.residual_history.push_back(std::sqrt(rr));
  const double target = tol * ny;
  for (int k = 0; k < max_iters; ++k) {
    if (std::sqrt(rr) <= target) {
      out.iterations = k;
      return out;
    }
    Vector ap = apply(p);
    const double pap = dot(p, ap);
    if (pap <= 0.0) throw NotSPD("nonpositive curvature encountered in cg");
    const double alpha = rr / pap;
    axpy(alpha, p, out.x);
    axpy(-alpha, ap, r);
    const double rr_next = dot(r, r);
    out.residual_history.push_back(std::sqrt(rr_next));
    const double beta = rr_next / rr;
    rr = rr_next;
    for (int i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
  }
  if (std::sqrt(rr) <= target) {
    out.iterations = max_iters;
    return out;
  }
  std::ostringstream os;
  os << "cg stalled at relative residual " << std::sqrt(rr) / ny << " after " << max_iters
     << " iterations";
  throw ConvergenceFailure(os.str());
}

}  // namespace powquad
