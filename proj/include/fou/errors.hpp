#pragma once

#include <stdexcept>
#include <string>

namespace fou {

/// Configuration or argument outside the model's domain (alpha <= 0, H out of [1/2,1), ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The observed path is numerically in the span of the basis; gamma_n is undefined.
class DegenerateDesign : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical failure (overflow guard, non-PD covariance, embedding failure).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fou
