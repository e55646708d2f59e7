#pragma once

#include <stdexcept>
#include <string>

namespace genusforge {

/// Base of every error raised by the library.
///
/// The CLI maps the two broad families onto exit statuses: anything derived
/// from ValidationError is reported as "validation-error" (exit 1), a
/// LimitExceeded as "limit-exceeded" (exit 2).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or mathematically invalid input.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or representation cap was hit.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public ValidationError {
 public:
  DivisionByZero() : ValidationError("division by zero") {}
  using ValidationError::ValidationError;
};

class SingularMatrix : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotPositiveDefinite : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Raised when an exact check that must succeed for valid input fails,
/// e.g. no Milgram phase matches a Gauss sum.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace genusforge
