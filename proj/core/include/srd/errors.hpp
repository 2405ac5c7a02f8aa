#pragma once

#include <stdexcept>
#include <string>

namespace srd {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input violated a documented precondition (shape, support, positivity, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine failed to reach its tolerance within its budget.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class DimensionMismatch : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NonHermitianInput : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NegativeEigenvalue : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NotTracePreserving : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class SupportViolation : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class DisjointSupports : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class IncompleteResolution : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class IncompletePOVM : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class AbsoluteContinuityViolation : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class DimensionTooSmall : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NoConvergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Thrown by the iterative optimizers; carries the best objective value reached.
class OptimizerNonConvergence : public NumericalError {
 public:
  OptimizerNonConvergence(const std::string& what, double best_value)
      : NumericalError(what), best_value_(best_value) {}

  double best_value() const noexcept { return best_value_; }

 private:
  double best_value_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class UnknownSuite : public Error {
 public:
  using Error::Error;
};

}  // namespace srd
