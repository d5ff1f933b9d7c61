#ifndef POWQUAD_ERRORS_HPP
#define POWQUAD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace powquad {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// The fractional exponent lies outside the open interval (0, 1).
class AlphaOutOfRange : public Error {
 public:
  explicit AlphaOutOfRange(double alpha)
      : Error("alpha must lie in (0, 1), got " + std::to_string(alpha)) {}
};

/// A scalar parameter (tolerance, dimension, count) is outside its domain.
class ParameterOutOfRange : public Error {
 public:
  using Error::Error;
};

/// The requested tolerance is so loose that the truncation endpoints cross.
class TolTooLarge : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of the called routine does not hold.
class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

/// A pivot underflowed the admissibility threshold during factorization.
class SingularShiftedSystem : public Error {
 public:
  SingularShiftedSystem(double sigma, int pivot_index)
      : Error("shifted system singular at sigma = " + std::to_string(sigma) +
              ", pivot " + std::to_string(pivot_index)),
        sigma_(sigma),
        pivot_index_(pivot_index) {}
  double sigma() const { return sigma_; }
  int pivot_index() const { return pivot_index_; }

 private:
  double sigma_;
  int pivot_index_;
};

/// An iteration failed to meet its tolerance within the iteration cap.
class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

/// The matrix is not symmetric to the tolerance the routine requires.
class NotSymmetric : public Error {
 public:
  using Error::Error;
};

/// The matrix is not symmetric positive definite.
class NotSPD : public Error {
 public:
  using Error::Error;
};

/// An abscissa maps to a shift that overflows the double range.
class ShiftOverflow : public Error {
 public:
  explicit ShiftOverflow(double x)
      : Error("shift exp(pi*sinh(x)/2) overflows at x = " + std::to_string(x)) {}
};

/// A singular iterate appeared inside a matrix iteration.
class SingularIterate : public Error {
 public:
  using Error::Error;
};

/// A complex evaluation point sits numerically on top of an integrand pole.
class PoleProximity : public Error {
 public:
  using Error::Error;
};

/// The pole index must be odd.
class KNotOdd : public Error {
 public:
  explicit KNotOdd(int k) : Error("pole index must be odd, got " + std::to_string(k)) {}
};

/// 1/alpha must be an integer for the requested rate formula.
class NotUnitFraction : public Error {
 public:
  explicit NotUnitFraction(double alpha)
      : Error("1/alpha must be an integer, got alpha = " + std::to_string(alpha)) {}
};

/// A bracketing search failed to enclose its target.
class BisectionFailure : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, long line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

/// The file is syntactically valid but uses an unsupported field or format.
class UnsupportedField : public Error {
 public:
  using Error::Error;
};

}  // namespace powquad

#endif  // POWQUAD_ERRORS_HPP
