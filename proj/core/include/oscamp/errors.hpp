// errors.hpp — exception hierarchy shared by the oscillator-amplifier library.
#pragma once

#include <stdexcept>
#include <string>

namespace oscamp {

// Root of the library's exception hierarchy.  Everything thrown on purpose
// derives from this, so callers can catch oscamp::Error and be done.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A constructor or function argument violates a documented precondition.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A query lies outside the domain the object can answer for (e.g. sampling a
// tabulated drive outside its grid, or a dense ODE solution outside its span).
class RangeError : public Error {
 public:
  using Error::Error;
};

// The requested operation is not defined for this drive-protocol variant.
class UnsupportedVariantError : public Error {
 public:
  using Error::Error;
};

// Evaluation requested at (or numerically indistinguishable from) a pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

// A special-function evaluation could not certify the requested accuracy.
// `achieved` carries the estimated relative error actually obtained.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}

  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_{0.0};
};

// The adaptive integrator failed to advance (step size underflow or the
// step-count cap was hit before reaching the end of the interval).
class StiffnessError : public Error {
 public:
  using Error::Error;
};

// A run configuration could not be parsed or failed validation.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace oscamp
