#pragma once

#include <stdexcept>
#include <string>

namespace lcanon {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed input: wrong shapes, non-finite entries, bad parameters.
class ValidationError : public Error {
public:
  using Error::Error;
};

// A mathematical hypothesis of an operation is violated (e.g. Re tr(B) = 0).
class PreconditionError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

// Numerical breakdown or a mathematical property that fails to hold.
class NumericalError : public Error {
public:
  using Error::Error;
};

// A Choi operator has an eigenvalue below the PSD tolerance.
class NotCompletelyPositiveError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

// The projected Choi operator of a generator is not PSD.
class NotCpGeneratorError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

// The generator is not of the form K(.) + (.)K* + Phi within tolerance.
class InconsistentGeneratorError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

}  // namespace lcanon
