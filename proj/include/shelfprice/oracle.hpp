#pragma once

// Exhaustive search over a candidate grid.
//
// Every schedule in the product of the grid rows is answered with the
// buyer's best response. The search is the ground truth the DP and the
// bound certificates are checked against, so it uses nothing but
// buyer.hpp and works for any decay profile.
//
// Schedules are visited as a mixed-radix counter (day 1 most significant),
// split into contiguous chunks for the workers and merged in chunk order,
// so ties resolve to the lexicographically smallest schedule whatever the
// thread count.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <vector>

#include "shelfprice/buyer.hpp"
#include "shelfprice/candidates.hpp"
#include "shelfprice/parallel.hpp"

namespace shelfprice {

struct OracleOptions {
  std::uint64_t budget = 10'000'000;
  unsigned threads = 0;
};

struct OracleResult {
  PriceSchedule prices;
  Outcome outcome;
  PurchasePlan plan;
  std::uint64_t schedules = 0;
};

struct ParetoPoint {
  Money revenue;
  FineMoney utility;

  friend bool operator==(const ParetoPoint&, const ParetoPoint&) = default;
};

namespace detail {

inline std::uint64_t checked_grid_size(const Instance& instance, const CandidateSet& grid, std::uint64_t budget) {
  if (grid.days() != instance.days()) throw InstanceError("grid has a different number of days than the instance");
  for (int t = 0; t < grid.days(); ++t)
    for (Money p : grid.row(t))
      if (p < Money{}) throw InstanceError("grid prices must be non-negative");
  const auto count = grid.schedule_count();
  if (count.saturated || count.value > budget) throw BudgetExceeded(count.value, count.saturated, budget);
  return count.value;
}

// Calls visit(schedule) for every schedule with linear index in [begin, end).
template <typename Visit>
void enumerate_range(const CandidateSet& grid, std::uint64_t begin, std::uint64_t end, Visit&& visit) {
  const int days = grid.days();
  std::vector<std::size_t> digits(static_cast<std::size_t>(days));
  std::uint64_t rest = begin;
  for (int t = days - 1; t >= 0; --t) {
    digits[static_cast<std::size_t>(t)] = static_cast<std::size_t>(rest % grid.row_size(t));
    rest /= grid.row_size(t);
  }
  PriceSchedule schedule;
  schedule.prices.resize(static_cast<std::size_t>(days));
  for (int t = 0; t < days; ++t) schedule.prices[static_cast<std::size_t>(t)] = grid.row(t)[digits[static_cast<std::size_t>(t)]];

  for (std::uint64_t index = begin; index < end; ++index) {
    visit(static_cast<const PriceSchedule&>(schedule));
    for (int t = days - 1; t >= 0; --t) {
      auto& digit = digits[static_cast<std::size_t>(t)];
      if (++digit < grid.row_size(t)) {
        schedule.prices[static_cast<std::size_t>(t)] = grid.row(t)[digit];
        break;
      }
      digit = 0;
      schedule.prices[static_cast<std::size_t>(t)] = grid.row(t)[0];
    }
  }
}

inline std::size_t chunk_count(std::uint64_t total) { return static_cast<std::size_t>(std::min<std::uint64_t>(total, 1024)); }

// Keeps the points no other point beats on both revenue and utility,
// sorted by revenue descending (utility then strictly ascending).
inline void pareto_insert(std::vector<ParetoPoint>& front, const ParetoPoint& p) {
  for (const auto& q : front)
    if (q.revenue >= p.revenue && q.utility >= p.utility) return;
  std::erase_if(front, [&](const ParetoPoint& q) { return q.revenue <= p.revenue && q.utility <= p.utility; });
  auto at = std::find_if(front.begin(), front.end(), [&](const ParetoPoint& q) { return q.revenue < p.revenue; });
  front.insert(at, p);
}

}  // namespace detail

/// Revenue-maximizing schedule of the grid; ties go to the
/// lexicographically smallest schedule. Throws BudgetExceeded when the grid
/// holds more schedules than options.budget.
inline OracleResult oracle_optimal(const Instance& instance, const CandidateSet& grid, const OracleOptions& options = {}) {
  const std::uint64_t total = detail::checked_grid_size(instance, grid, options.budget);
  const std::size_t chunks = detail::chunk_count(total);
  struct Best {
    Money revenue{};
    PriceSchedule prices;
    bool found = false;
  };
  std::vector<Best> best(chunks);
  parallel_chunks(total, chunks, options.threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    Best local;
    detail::enumerate_range(grid, begin, end, [&](const PriceSchedule& schedule) {
      const Money revenue = response_summary(instance, schedule).revenue;
      if (!local.found || revenue > local.revenue) {
        local.revenue = revenue;
        local.prices = schedule;
        local.found = true;
      }
    });
    best[chunk] = std::move(local);
  });
  const Best* winner = nullptr;
  for (const auto& b : best)
    if (b.found && (!winner || b.revenue > winner->revenue)) winner = &b;

  OracleResult result;
  result.prices = winner->prices;
  result.outcome = respond_and_evaluate(instance, result.prices, &result.plan);
  result.schedules = total;
  return result;
}

/// All (revenue, buyer utility) outcomes of the grid that no other outcome
/// matches or beats on both coordinates, by revenue descending.
inline std::vector<ParetoPoint> oracle_pareto(const Instance& instance, const CandidateSet& grid,
                                              const OracleOptions& options = {}) {
  const std::uint64_t total = detail::checked_grid_size(instance, grid, options.budget);
  const std::size_t chunks = detail::chunk_count(total);
  std::vector<std::vector<ParetoPoint>> fronts(chunks);
  parallel_chunks(total, chunks, options.threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    std::vector<ParetoPoint> local;
    detail::enumerate_range(grid, begin, end, [&](const PriceSchedule& schedule) {
      const auto summary = response_summary(instance, schedule);
      detail::pareto_insert(local, {summary.revenue, summary.buyer_utility});
    });
    fronts[chunk] = std::move(local);
  });
  std::vector<ParetoPoint> front;
  for (const auto& f : fronts)
    for (const auto& p : f) detail::pareto_insert(front, p);
  return front;
}

}  // namespace shelfprice
