#pragma once

#include <stdexcept>
#include <string>

namespace xxz {

/// Input outside the supported domain of an operation. The CLI maps this
/// family to exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical procedure failed to reach its accuracy target. The CLI maps
/// this family to exit code 2.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public InputError {
 public:
  using InputError::InputError;
};

class UnsupportedSeparation : public InputError {
 public:
  using InputError::InputError;
};

class MissingSeries : public InputError {
 public:
  using InputError::InputError;
};

class ResourceError : public InputError {
 public:
  using InputError::InputError;
};

class DegeneracyError : public InputError {
 public:
  using InputError::InputError;
};

class QuadratureError : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

class DerivativeError : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

class PhysicalityError : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

class NumericalError : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

class ConvergenceError : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

class FitError : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

}  // namespace xxz
