#pragma once

#include <stdexcept>
#include <string>

namespace cliqueprobe {

// Invalid arguments: out-of-range vertices, malformed parameters.
class parameter_error : public std::invalid_argument {
  public:
    explicit parameter_error(const std::string& what)
        : std::invalid_argument(what) {}
};

// Raised when a fresh query would exceed the ledger budget.
// Distinct from parameter_error so callers can abort a trial cleanly.
class budget_exhausted_error : public std::runtime_error {
  public:
    explicit budget_exhausted_error(const std::string& what)
        : std::runtime_error(what) {}
};

// Exact enumeration would exceed the configured cap.
class enumeration_infeasible_error : public std::runtime_error {
  public:
    explicit enumeration_infeasible_error(const std::string& what)
        : std::runtime_error(what) {}
};

}  // namespace cliqueprobe
