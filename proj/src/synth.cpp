#include "powquad/synth.hpp"

#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

#include "powquad/errors.hpp"
#include "powquad/linalg.hpp"

namespace powquad {

uint64_t RandomStream::next_bits() {
  state_ += 0x9E3779B97F4A7C15ull;
  uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double RandomStream::next_unit() { return static_cast<double>(next_bits() >> 11) * 0x1.0p-53; }

double RandomStream::next_symmetric() { return 2.0 * next_unit() - 1.0; }

DenseMatrix random_uniform_matrix(int n, uint64_t seed) {
  DenseMatrix m(n);
  RandomStream rng(seed);
  for (double& v : m.data()) v = rng.next_symmetric();
  return m;
}

namespace {

// Orthogonal factor of the Householder QR of m, accumulated explicitly.
DenseMatrix qr_orthogonal_factor(DenseMatrix r) {
  const int n = r.dim();
  DenseMatrix q = DenseMatrix::identity(n);
  std::vector<double> v(n);
  for (int k = 0; k < n; ++k) {
    double norm = 0.0;
    for (int i = k; i < n; ++i) norm += r(i, k) * r(i, k);
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    const double alpha = r(k, k) >= 0.0 ? -norm : norm;
    double vnorm2 = 0.0;
    for (int i = k; i < n; ++i) {
      v[i] = r(i, k) - (i == k ? alpha : 0.0);
      vnorm2 += v[i] * v[i];
    }
    if (vnorm2 == 0.0) continue;
    // Apply I - 2 v v^T / (v^T v) to R (left) and accumulate into Q (right).
    for (int j = k; j < n; ++j) {
      double s = 0.0;
      for (int i = k; i < n; ++i) s += v[i] * r(i, j);
      s *= 2.0 / vnorm2;
      for (int i = k; i < n; ++i) r(i, j) -= s * v[i];
    }
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = k; j < n; ++j) s += q(i, j) * v[j];
      s *= 2.0 / vnorm2;
      for (int j = k; j < n; ++j) q(i, j) -= s * v[j];
    }
  }
  return q;
}

double one_norm(const DenseMatrix& m) {
  const int n = m.dim();
  double best = 0.0;
  for (int j = 0; j < n; ++j) {
    double col = 0.0;
    for (int i = 0; i < n; ++i) col += std::abs(m(i, j));
    best = std::max(best, col);
  }
  return best;
}

}  // namespace

DenseMatrix gen_spd(int n, double kappa, uint64_t seed) {
  if (n < 2) throw ParameterOutOfRange("generator needs dimension at least 2");
  if (!(kappa >= 1.0)) throw ParameterOutOfRange("condition number must be at least 1");

  const DenseMatrix q = qr_orthogonal_factor(random_uniform_matrix(n, seed));

  // Geometric eigenvalues d_i = kappa^((i/(n-1)) - 1/2): endpoints
  // kappa^(-1/2) and kappa^(1/2) multiply to 1.
  const double log_kappa = std::log(kappa);
  std::vector<double> d(n);
  for (int i = 0; i < n; ++i)
    d[i] = std::exp(log_kappa * (static_cast<double>(i) / (n - 1) - 0.5));

  // Q * diag(d) * Q^T, assembled symmetrically.
  DenseMatrix scaled(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scaled(i, j) = q(i, j) * d[j];
  DenseMatrix out = scaled * q.transpose();
  // Exact symmetry so downstream symmetric-only paths accept the result.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double s = 0.5 * (out(i, j) + out(j, i));
      out(i, j) = out(j, i) = s;
    }
  return out;
}

DenseMatrix matrix_exponential(const DenseMatrix& a) {
  a.validate();
  const int n = a.dim();

  int squarings = 0;
  double scale = one_norm(a);
  while (scale > 0.5) {
    scale /= 2.0;
    ++squarings;
  }
  DenseMatrix x = a;
  x *= std::ldexp(1.0, -squarings);

  // Taylor series of exp on the scaled matrix; terms shrink at least
  // geometrically with ratio <= 0.5/k so ~30 terms reach full precision.
  DenseMatrix sum = DenseMatrix::identity(n);
  DenseMatrix term = DenseMatrix::identity(n);
  for (int k = 1; k <= 40; ++k) {
    term = term * x;
    term *= 1.0 / k;
    sum += term;
    if (term.frobenius_norm() <= 1e-18 * sum.frobenius_norm()) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

DenseMatrix gen_nonsymmetric(int n, double target_kappa, uint64_t seed) {
  return gen_nonsymmetric_detailed(n, target_kappa, seed).matrix;
}

NonsymmetricGen gen_nonsymmetric_detailed(int n, double target_kappa, uint64_t seed) {
  if (n < 2) throw ParameterOutOfRange("generator needs dimension at least 2");
  if (!(target_kappa > 1.0))
    throw ParameterOutOfRange("target condition number must exceed 1");

  const DenseMatrix r = random_uniform_matrix(n, seed);
  const double norm_tol = 1e-6;

  auto kappa_of = [&](double c) {
    DenseMatrix m = r;
    m *= c;
    const NormEstimates est = estimate_norms(matrix_exponential(m), norm_tol);
    return est.norm_a * est.norm_ainv;
  };

  // Bracket: kappa(exp(cR)) grows continuously from 1 at c = 0.
  double lo = 0.0, hi = 0.25;
  double hi_kappa = kappa_of(hi);
  int doublings = 0;
  while (hi_kappa < target_kappa) {
    lo = hi;
    hi *= 2.0;
    hi_kappa = kappa_of(hi);
    if (++doublings > 60) throw BisectionFailure("no bracket for the target condition number");
  }

  double c = hi;
  double achieved = hi_kappa;
  const double window = 0.01;  // land within 1%, well inside the 5% contract
  auto in_window = [&] {
    return std::abs(std::log(achieved / target_kappa)) <= std::log1p(window);
  };
  for (int iter = 0; iter < 200 && !in_window(); ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double mid_kappa = kappa_of(mid);
    if (mid_kappa < target_kappa) {
      lo = mid;
    } else {
      hi = mid;
    }
    c = mid;
    achieved = mid_kappa;
  }
  if (!in_window()) {
    std::ostringstream os;
    os << "bisection stalled at condition number " << achieved << " for target "
       << target_kappa;
    throw BisectionFailure(os.str());
  }

  DenseMatrix m = r;
  m *= c;
  DenseMatrix out = matrix_exponential(m);

  // Balance so the extreme singular values multiply to one.
  const NormEstimates est = estimate_norms(out, 1e-9);
  out *= std::sqrt(est.norm_ainv / est.norm_a);

  NonsymmetricGen gen;
  gen.matrix = std::move(out);
  gen.c = c;
  gen.achieved_kappa = achieved;
  return gen;
}

CsrMatrix gen_laplacian_1d(int n) {
  if (n < 2) throw ParameterOutOfRange("laplacian needs dimension at least 2");
  std::vector<int> row_ptr(n + 1, 0);
  std::vector<int> col_idx;
  std::vector<double> values;
  col_idx.reserve(3 * static_cast<size_t>(n));
  values.reserve(3 * static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (i > 0) {
      col_idx.push_back(i - 1);
      values.push_back(-1.0);
    }
    col_idx.push_back(i);
    values.push_back(2.0);
    if (i < n - 1) {
      col_idx.push_back(i + 1);
      values.push_back(-1.0);
    }
    row_ptr[i + 1] = static_cast<int>(col_idx.size());
  }
  return CsrMatrix(n, std::move(row_ptr), std::move(col_idx), std::move(values));
}

}  // namespace powquad
