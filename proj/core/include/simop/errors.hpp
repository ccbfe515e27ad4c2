#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace simop {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument: non-finite input, non-positive parameter, mismatched frame.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A quadrature or sampling grid too coarse for the requested accuracy.
class ResolutionError : public Error {
 public:
  ResolutionError(const std::string& what, double estimate)
      : Error(what), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

/// A matrix that must be inverted is singular or numerically close to it.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// A structural precondition of an iteration variant does not hold
/// (gap condition, JB = 0, one-sided support, ...).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Simple iterations diverged or exhausted the iteration cap.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, std::vector<double> log)
      : Error(what), log_(std::move(log)) {}
  const std::vector<double>& log() const noexcept { return log_; }

 private:
  std::vector<double> log_;
};

/// A computed similarity failed its a-posteriori check.
class VerificationError : public Error {
 public:
  using Error::Error;
};

/// The reference eigenvalue computation failed.
class OracleFailure : public Error {
 public:
  using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Input document is not valid JSON or does not follow the expected layout.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace simop
