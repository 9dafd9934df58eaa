#pragma once

#include <stdexcept>
#include <string>

namespace eqdense {

// Precondition violations: bad dimensions, out-of-domain arguments.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Enumeration or degree limits exceeded.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Quadrature or iterative refinement failed to meet its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-generic input: identically zero polynomial or resultant.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical breakdown that must not be silently clamped (e.g. det L < 0).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace eqdense
