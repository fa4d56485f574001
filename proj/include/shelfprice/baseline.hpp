#pragma once

// Optimal pricing when goods never spoil.
//
// With unlimited shelf-life some optimal schedule never makes the buyer
// store, so it suffices to search schedules with p_t <= p_{t-1} + c, under
// which every unit is bought on its consumption day. That restriction turns
// the problem into a DP over days whose state is yesterday's price:
// O(T |C'|^2). Ties resolve to the lexicographically smallest schedule.

#include <chrono>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "shelfprice/buyer.hpp"
#include "shelfprice/candidates.hpp"
#include "shelfprice/dp_solver.hpp"
#include "shelfprice/parallel.hpp"

namespace shelfprice {

namespace detail {
inline constexpr std::int64_t kInfeasible = std::numeric_limits<std::int64_t>::min() / 4;
}

struct BaselineOptions {
  unsigned threads = 0;
};

/// The instance with its decay replaced by "never spoils".
inline Instance unlimited_shelf_life(const Instance& instance) {
  return instance.with_decay(DecayProfile::unlimited(instance.days()));
}

inline SolveResult solve_no_storage(const Instance& instance, const BaselineOptions& options = {}) {
  const auto start = std::chrono::steady_clock::now();
  const Instance unlimited = unlimited_shelf_life(instance);
  const CandidateSet rows = all_candidates(unlimited, true);
  const int days = unlimited.days();
  const std::int64_t c = unlimited.storage_cost().raw();

  // revenue[t][o]: same-day revenue of pricing day t at candidate o.
  std::vector<std::vector<std::int64_t>> revenue(static_cast<std::size_t>(days));
  for (int t = 0; t < days; ++t)
    for (Money p : rows.row(t)) revenue[static_cast<std::size_t>(t)].push_back(window_demand(unlimited, t, p) * p.raw());

  DpStats stats;
  // value[t][o']: best revenue of days t..T-1 when day t-1 is priced at o'.
  std::vector<std::vector<std::int64_t>> value(static_cast<std::size_t>(days) + 1);
  value[static_cast<std::size_t>(days)] = std::vector<std::int64_t>(rows.row_size(days - 1), 0);
  for (int t = days - 1; t >= 1; --t) {
    const auto& prev_row = rows.row(t - 1);
    const auto& row = rows.row(t);
    const auto& after = value[static_cast<std::size_t>(t) + 1];
    auto& here = value[static_cast<std::size_t>(t)];
    here.assign(prev_row.size(), 0);
    parallel_chunks(prev_row.size(), 64, options.threads, [&](std::size_t, std::size_t begin, std::size_t end) {
      for (std::size_t prev = begin; prev < end; ++prev) {
        const std::int64_t cap = prev_row[prev].raw() + c;
        // Stays at kInfeasible when every candidate of day t exceeds prev + c.
        std::int64_t best = detail::kInfeasible;
        for (std::size_t o = 0; o < row.size() && row[o].raw() <= cap; ++o)
          best = std::max(best, revenue[static_cast<std::size_t>(t)][o] + after[o]);
        here[prev] = best;
      }
    });
    stats.states += prev_row.size();
    stats.transitions += prev_row.size() * row.size();
    stats.largest_layer = std::max<std::uint64_t>(stats.largest_layer, prev_row.size());
  }

  // Forward pass picking the smallest feasible optimal price each day.
  std::vector<Money> prices;
  std::int64_t total = 0;
  std::int64_t cap = std::numeric_limits<std::int64_t>::max();
  std::int64_t target = std::numeric_limits<std::int64_t>::min();
  for (int t = 0; t < days; ++t) {
    const auto& row = rows.row(t);
    const auto& after = value[static_cast<std::size_t>(t) + 1];
    if (t == 0) {
      for (std::size_t o = 0; o < row.size(); ++o) target = std::max(target, revenue[0][o] + after[o]);
      total = target;
    }
    std::size_t pick = row.size();
    for (std::size_t o = 0; o < row.size() && row[o].raw() <= cap; ++o) {
      if (revenue[static_cast<std::size_t>(t)][o] + after[o] == target) {
        pick = o;
        break;
      }
    }
    if (pick == row.size()) throw std::logic_error("no-storage DP reconstruction failed");
    prices.push_back(row[pick]);
    target -= revenue[static_cast<std::size_t>(t)][pick];
    cap = row[pick].raw() + c;
  }

  SolveResult result;
  result.prices = PriceSchedule{std::move(prices)};
  result.outcome = respond_and_evaluate(unlimited, result.prices, &result.plan);
  if (result.outcome.revenue.raw() != total)
    throw std::logic_error("no-storage DP revenue disagrees with best-response revenue");
  stats.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  result.stats = stats;
  return result;
}

}  // namespace shelfprice
