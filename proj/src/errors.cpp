#include "viewadapt/errors.hpp"

#include <sstream>

namespace viewadapt {

namespace {

std::string describe_infeasible(double budget, double minimum_budget) {
  std::ostringstream out;
  out << "budget " << budget << " Mbps is below the minimum feasible budget "
      << minimum_budget << " Mbps";
  return out.str();
}

std::string describe_fields(const std::vector<std::string>& fields) {
  std::string msg = "invalid configuration:";
  for (const auto& f : fields) msg += " " + f;
  return msg;
}

}  // namespace

InfeasibleBudget::InfeasibleBudget(double budget, double minimum_budget)
    : std::runtime_error(describe_infeasible(budget, minimum_budget)),
      budget_(budget),
      minimum_budget_(minimum_budget) {}

ValidationError::ValidationError(std::vector<std::string> fields)
    : std::runtime_error(describe_fields(fields)), fields_(std::move(fields)) {}

}  // namespace viewadapt
