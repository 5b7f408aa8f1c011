#pragma once

#include <stdexcept>
#include <string>

namespace wallscale {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad geometry, bad grid, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Quadrature budget exhausted, descent stall, non-finite values.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A checked inequality or bracket did not hold.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace wallscale
