#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace shelfprice {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent instance, schedule or purchase plan.
struct InstanceError : Error {
  using Error::Error;
};

/// The requested operation does not apply to this decay model.
struct UnsupportedModel : Error {
  using Error::Error;
};

/// Exhaustive enumeration would exceed the configured schedule budget.
struct BudgetExceeded : Error {
  BudgetExceeded(std::uint64_t required, bool saturated, std::uint64_t budget)
      : Error("schedule budget exceeded: grid has " + std::string(saturated ? "more than " : "") +
              std::to_string(required) + " schedules, budget is " + std::to_string(budget)),
        required(required),
        saturated(saturated),
        budget(budget) {}
  std::uint64_t required;
  bool saturated;
  std::uint64_t budget;
};

/// A value does not fit the fixed-point representation.
struct PrecisionOverflow : Error {
  using Error::Error;
};

/// The DP state space is too large to allocate.
struct StateSpaceTooLarge : Error {
  using Error::Error;
};

struct SolveTimeout : Error {
  using Error::Error;
};

}  // namespace shelfprice
