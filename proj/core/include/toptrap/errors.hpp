#pragma once

#include <stdexcept>
#include <string>

namespace toptrap {

/// Raised when an input violates a documented precondition.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised by the ODE integrators when step control fails.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double time)
      : std::runtime_error(what + " at t=" + std::to_string(time)), time_(time) {}

  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Raised when two independent evaluation routes disagree beyond their bound.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a sweep grid exceeds the point budget.
class GridSizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace toptrap
