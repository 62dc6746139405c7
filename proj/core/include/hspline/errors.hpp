#pragma once

#include <stdexcept>
#include <string>

namespace hspline {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: wrong dimension, non-finite coordinates, bad parameters.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of an operation (t <= 0, spacing <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// The centers are not a determining set for polynomials of the given degree.
class UnisolvencyError : public Error {
 public:
  UnisolvencyError(const std::string& what, int degree) : Error(what), degree_(degree) {}
  int degree() const noexcept { return degree_; }

 private:
  int degree_;
};

// The interpolation system could not be solved to the required accuracy.
class IllConditionedError : public Error {
 public:
  IllConditionedError(const std::string& what, double condition) : Error(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

// The kernel quadratic form went significantly negative on a constrained vector.
class CpdViolationError : public Error {
 public:
  using Error::Error;
};

// The requested spectral moment does not exist (k <= lambda).
class DivergentMomentError : public Error {
 public:
  using Error::Error;
};

// A spacing exceeds the admissible threshold of the error bound.
class HypothesisViolatedError : public Error {
 public:
  HypothesisViolatedError(const std::string& what, double ln_threshold)
      : Error(what), ln_threshold_(ln_threshold) {}
  double ln_threshold() const noexcept { return ln_threshold_; }

 private:
  double ln_threshold_;
};

// Not enough usable levels to fit a decay rate.
class FitUnavailableError : public Error {
 public:
  using Error::Error;
};

// An experiment configuration cannot be carried out (coverage failure, point cap).
class SetupError : public Error {
 public:
  using Error::Error;
};

}  // namespace hspline
