#include "terndio/errors.hpp"

#include <cstdio>

namespace terndio {

namespace {

std::string budget_message(const std::string& what, double required, double budget) {
  char buf[128];
  std::snprintf(buf, sizeof buf, " (required %.6g, budget %.6g)", required, budget);
  return what + buf;
}

}  // namespace

BudgetExceeded::BudgetExceeded(const std::string& what, double required, double budget)
    : std::runtime_error(budget_message(what, required, budget)),
      required_(required),
      budget_(budget) {}

}  // namespace terndio
