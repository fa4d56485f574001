#pragma once

// Deliberately naive re-implementations used as test oracles. Nothing here
// shares code with the library beyond the model types.

#include <cstdint>
#include <optional>
#include <vector>

#include "shelfprice/model.hpp"

namespace shelfprice::testkit {

struct RefResult {
  Money revenue;
  FineMoney utility;
};

/// Every slot tries every earlier purchase day; ties go to the later day
/// and a zero-utility purchase is made.
inline RefResult ref_respond(const Instance& inst, const std::vector<Money>& prices) {
  RefResult out;
  for (int t = 0; t < inst.days(); ++t)
    for (int i = 0; i < inst.units(); ++i) {
      std::optional<FineMoney> best;
      Money paid;
      for (int s = 0; s <= t; ++s) {
        const Fraction r = inst.decay().at(t - s + 1);
        if (r.is_zero()) continue;
        const FineMoney u = inst.value(i, t) * r - widen(prices[static_cast<std::size_t>(s)]) -
                            widen(inst.storage_cost() * (t - s));
        if (!best || u >= *best) {
          best = u;
          paid = prices[static_cast<std::size_t>(s)];
        }
      }
      if (best && *best >= FineMoney{}) {
        out.revenue += paid;
        out.utility += *best;
      }
    }
  return out;
}

/// Best revenue over every schedule with whole-unit prices in [0, top]
/// plus the sentinel. Exponential; only for the smallest instances.
inline Money ref_integer_optimum(const Instance& inst, std::int64_t top) {
  std::vector<Money> grid;
  for (std::int64_t p = 0; p <= top; ++p) grid.push_back(Money::units(p));
  grid.push_back(inst.sentinel());
  std::vector<std::size_t> digit(static_cast<std::size_t>(inst.days()), 0);
  std::vector<Money> prices(static_cast<std::size_t>(inst.days()), grid[0]);
  Money best;
  while (true) {
    best = std::max(best, ref_respond(inst, prices).revenue);
    std::size_t t = 0;
    for (; t < digit.size(); ++t) {
      if (++digit[t] < grid.size()) {
        prices[t] = grid[digit[t]];
        break;
      }
      digit[t] = 0;
      prices[t] = grid[0];
    }
    if (t == digit.size()) return best;
  }
}

/// M from the definition: best posted-price revenue of each day on its own.
inline Money ref_M(const Instance& inst) {
  Money total;
  for (int t = 0; t < inst.days(); ++t) {
    Money day_best;
    for (int j = 0; j < inst.units(); ++j) {
      const Money p = inst.value(j, t);
      int buyers = 0;
      for (int i = 0; i < inst.units(); ++i) buyers += inst.value(i, t) >= p;
      day_best = std::max(day_best, p * buyers);
    }
    total += day_best;
  }
  return total;
}

}  // namespace shelfprice::testkit
