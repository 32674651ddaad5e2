#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace viewadapt {

// Precondition or invariant violation on caller-supplied data.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Budget below W_min = S * R_max; no assignment of ladder factors fits.
class InfeasibleBudget : public std::runtime_error {
 public:
  InfeasibleBudget(double budget, double minimum_budget);

  double budget() const { return budget_; }
  double minimum_budget() const { return minimum_budget_; }

 private:
  double budget_;
  double minimum_budget_;
};

// Exact oracle refused an instance whose DP table would exceed its caps.
class InstanceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Configuration rejected; carries every offending field name.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> fields);

  const std::vector<std::string>& fields() const { return fields_; }

 private:
  std::vector<std::string> fields_;
};

}  // namespace viewadapt
