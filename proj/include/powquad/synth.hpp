#ifndef POWQUAD_SYNTH_HPP
#define POWQUAD_SYNTH_HPP

#include <cstdint>

#include "powquad/matrix.hpp"

namespace powquad {

// Synthetic test matrices with a prescribed condition number. All generators
// are deterministic in (arguments, seed): the random bits come from a fixed
// 64-bit generator mapped to doubles by an explicit shift-and-scale, so the
// same seed reproduces the same bytes on every platform.

/// Symmetric positive definite Q*D*Q^T: Q from the QR factorization of a
/// seeded uniform random matrix, D a geometric sequence from kappa^(-1/2) to
/// kappa^(1/2), so the extreme eigenvalues multiply to 1 and the condition
/// number is kappa.
DenseMatrix gen_spd(int n, double kappa, uint64_t seed);

/// Nonsymmetric exp(c*R) for a seeded uniform random R, with c bisected until
/// the 2-norm condition number lands within 5% of target_kappa, then scaled
/// so the extreme singular values multiply to 1. Throws BisectionFailure if
/// the bracket or the bisection loop fails.
DenseMatrix gen_nonsymmetric(int n, double target_kappa, uint64_t seed);

/// Same construction, also reporting the bisected growth factor c and the
/// condition number it landed on (before balancing, which preserves it).
struct NonsymmetricGen {
  DenseMatrix matrix;
  double c = 0.0;
  double achieved_kappa = 0.0;
};
NonsymmetricGen gen_nonsymmetric_detailed(int n, double target_kappa, uint64_t seed);

/// Standard second-difference matrix tridiag(-1, 2, -1), symmetric positive
/// definite, in sparse form.
CsrMatrix gen_laplacian_1d(int n);

/// Matrix exponential by scaling and squaring with a truncated Taylor series
/// (series run on ||X||_1 <= 0.5, then repeated squaring).
DenseMatrix matrix_exponential(const DenseMatrix& a);

/// Uniform doubles in [-1, 1) from a splitmix64 stream; the shared source of
/// randomness for the generators and for test fixtures.
class RandomStream {
 public:
  explicit RandomStream(uint64_t seed) : state_(seed) {}
  uint64_t next_bits();
  /// Uniform in [0, 1) with 53 random bits.
  double next_unit();
  /// Uniform in [-1, 1).
  double next_symmetric();

 private:
  uint64_t state_;
};

/// n-by-n matrix with independent entries uniform in [-1, 1).
DenseMatrix random_uniform_matrix(int n, uint64_t seed);

}  // namespace powquad

#endif  // POWQUAD_SYNTH_HPP
