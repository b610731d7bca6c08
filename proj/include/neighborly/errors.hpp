#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace neighborly {

/// Raised by the brute-force facet oracle when d+1 points share a hyperplane.
class GeneralPositionError : public std::runtime_error {
 public:
  GeneralPositionError(std::vector<Eigen::Index> subset, const std::string& what)
      : std::runtime_error(what), subset_(std::move(subset)) {}
  const std::vector<Eigen::Index>& subset() const noexcept { return subset_; }

 private:
  std::vector<Eigen::Index> subset_;
};

/// Exhaustive subset enumeration would exceed the caller's budget.
class SubsetBudgetExceeded : public std::runtime_error {
 public:
  SubsetBudgetExceeded(std::uint64_t required, std::uint64_t cap)
      : std::runtime_error("subset budget exceeded: " + std::to_string(required) + " subsets > cap " +
                           std::to_string(cap)),
        required_(required),
        cap_(cap) {}
  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t required_;
  std::uint64_t cap_;
};

/// A closed-form count evaluated to something that is not a nonnegative integer.
class FormulaInconsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Root bracketing found no sign change; carries the scanned (beta, value) grid.
class NoSignChange : public std::runtime_error {
 public:
  NoSignChange(std::vector<std::pair<double, double>> scan, const std::string& what)
      : std::runtime_error(what), scan_(std::move(scan)) {}
  const std::vector<std::pair<double, double>>& scan() const noexcept { return scan_; }

 private:
  std::vector<std::pair<double, double>> scan_;
};

}  // namespace neighborly
