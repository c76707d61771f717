#pragma once

#include <stdexcept>
#include <string>

namespace symtomo {

/// Base of all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or configuration (bad grid, degenerate frame, out-of-range time).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A sampling grid does not cover the support of the object being sampled.
class CoverageError : public Error {
 public:
  using Error::Error;
};

/// Odd cat state with |alpha| too small for N^(-) to be finite.
class DegenerateNormalizationError : public Error {
 public:
  using Error::Error;
};

/// Normalization or reality check failed on a computed quasi-distribution.
class ConventionError : public Error {
 public:
  using Error::Error;
};

/// The ODE integrator could not advance (step underflow or non-finite state).
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double at_time) : Error(what), time_(at_time) {}
  double time() const { return time_; }

 private:
  double time_;
};

}  // namespace symtomo
