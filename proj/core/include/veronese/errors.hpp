#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace veronese {

/// A precondition on the arguments was violated.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A certified numerical procedure could not reach the requested accuracy.
class PrecisionExhausted : public std::runtime_error {
 public:
  PrecisionExhausted(const std::string& what, std::vector<double> best_radii = {})
      : std::runtime_error(what), best_radii_(std::move(best_radii)) {}

  const std::vector<double>& best_radii() const noexcept { return best_radii_; }

 private:
  std::vector<double> best_radii_;
};

/// An enumeration would exceed the configured work budget. Nothing was run.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, double estimate, double budget)
      : std::runtime_error(what), estimate_(estimate), budget_(budget) {}

  double estimate() const noexcept { return estimate_; }
  double budget() const noexcept { return budget_; }

 private:
  double estimate_;
  double budget_;
};

}  // namespace veronese
