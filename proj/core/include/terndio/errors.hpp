#pragma once

#include <stdexcept>
#include <string>

namespace terndio {

/// Caller supplied parameters that violate a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A function was asked for a value outside its mathematical domain
/// (nonpositive logarithm argument, negative radicand, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exact integer arithmetic would leave the 128-bit range.
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// The requested work exceeds the configured budget. Nothing was computed.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, double required, double budget);

  double required() const noexcept { return required_; }
  double budget() const noexcept { return budget_; }

 private:
  double required_;
  double budget_;
};

}  // namespace terndio
