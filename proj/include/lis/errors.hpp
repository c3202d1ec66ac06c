#pragma once

#include <stdexcept>
#include <string>

namespace lis {

/// Base for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Element count above the configured cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain (zero distance, UE behind the panel, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Element layout violates the array invariants (empty, off-plane, off-centre, coincident).
class InvalidGeometry : public Error {
 public:
  using Error::Error;
};

/// Iterative method did not converge.
class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& what, double residual) : Error(what), residual_(residual) {}
  [[nodiscard]] double residual() const { return residual_; }

 private:
  double residual_;
};

/// Linear solve could not reach the requested relative residual.
class IllConditionedSolve : public Error {
 public:
  IllConditionedSolve(const std::string& what, double residual, double condition_estimate)
      : Error(what), residual_(residual), condition_estimate_(condition_estimate) {}
  [[nodiscard]] double residual() const { return residual_; }
  [[nodiscard]] double condition_estimate() const { return condition_estimate_; }

 private:
  double residual_;
  double condition_estimate_;
};

/// Every eigenvalue fell at or below the truncation threshold.
class EmptySpectrum : public Error {
 public:
  using Error::Error;
};

/// Current vector with iᴴZi <= 0.
class NonRadiatingCurrent : public Error {
 public:
  using Error::Error;
};

/// Zero channel or similar degenerate input.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature missed its tolerance.
class AccuracyError : public Error {
 public:
  using Error::Error;
};

/// Malformed experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace lis
