#pragma once

#include <stdexcept>
#include <string>

namespace brickbo {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when no feasible placement remains for the next brick.
class SaturatedError : public Error {
 public:
  explicit SaturatedError(const std::string& what = "assembly saturated") : Error(what) {}
};

/// Raised when a Gaussian-process covariance cannot be factorized.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace brickbo
