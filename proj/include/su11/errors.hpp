#pragma once

#include <stdexcept>
#include <string>

namespace su11 {

// Bad user-facing arguments (negative r, loss outside [0,1], dimension
// mismatch, ...). CLI maps this to exit code 2.
class invalid_parameter_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Covariance matrices that cannot be inverted / have collapsed determinants.
class numeric_degeneracy_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Raised when a sensitivity is requested at a stationary point of the signal.
// Carries the measured derivative magnitude so callers can report it.
class derivative_underflow_error : public std::runtime_error {
public:
  derivative_underflow_error(const std::string& what, double derivative_magnitude)
      : std::runtime_error(what), derivative_magnitude_(derivative_magnitude) {}
  double derivative_magnitude() const { return derivative_magnitude_; }

private:
  double derivative_magnitude_;
};

// Optimizers / root finders that cannot bracket a solution. Exit code 3.
class search_failure_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Fock-space truncation no longer holds the requested tail bound.
class truncation_error : public std::runtime_error {
public:
  truncation_error(const std::string& what, double tail_mass)
      : std::runtime_error(what), tail_mass_(tail_mass) {}
  double tail_mass() const { return tail_mass_; }

private:
  double tail_mass_;
};

// Requested quantity is not defined for the given input class.
class unsupported_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace su11
