#pragma once

#include <stdexcept>
#include <string>

namespace tren {

/// Malformed or out-of-contract input (bad file, bad quantum numbers, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The potential violates r²U → 0 at one end, or its well does not vanish.
class ConditionViolation : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// λ² exceeds the well maximum: there is no classically allowed interval.
class NoAllowedRegion : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The requested level does not exist for this well.
class NoSuchLevel : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A quadrature, root search or integration failed to meet its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}

  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

}  // namespace tren
