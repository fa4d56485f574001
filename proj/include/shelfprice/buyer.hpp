#pragma once

// Buyer best response to an announced price schedule.
//
// Each consumption slot (i, t) is optimized on its own: the buyer picks the
// purchase day s <= t maximizing v(i,t) r(t-s+1) - p_s - c (t-s), prefers
// the latest such day on ties, and buys whenever that utility is >= 0.
// O(T^2 N) overall.

#include <optional>
#include <vector>

#include "shelfprice/model.hpp"

namespace shelfprice {

struct SlotChoice {
  int purchase_day = 0;
  FineMoney utility{};
};

struct ResponseSummary {
  Money revenue{};
  FineMoney buyer_utility{};
};

namespace detail {

// Scans the purchase window of one consumption day once; reused for all
// units of that day.
class DayWindow {
 public:
  DayWindow(const Instance& instance, const PriceSchedule& prices, int day) : day_(day) {
    const int span = instance.decay().span(instance.days());
    const int first = std::max(0, day - span + 1);
    for (int s = day; s >= first; --s) {
      const Fraction r = instance.decay().at(day - s + 1);
      if (r.is_zero()) continue;
      entries_.push_back({s, r, widen(prices[s] + instance.storage_cost() * (day - s))});
    }
  }

  std::optional<SlotChoice> best(Money value) const {
    std::optional<SlotChoice> best;
    // Entries run from the latest day backwards; strict improvement keeps
    // the latest day on ties.
    for (const auto& e : entries_) {
      const FineMoney u = value * e.decay - e.cost;
      if (!best || u > best->utility) best = SlotChoice{e.day, u};
    }
    if (best && best->utility < FineMoney{}) return std::nullopt;
    return best;
  }

 private:
  struct Entry {
    int day;
    Fraction decay;
    FineMoney cost;
  };
  int day_;
  std::vector<Entry> entries_;
};

}  // namespace detail

/// Best purchase day for slot (unit, day), or nullopt if every option has
/// negative utility.
inline std::optional<SlotChoice> best_purchase(const Instance& instance, const PriceSchedule& prices, int unit, int day) {
  check_schedule(instance, prices);
  return detail::DayWindow(instance, prices, day).best(instance.value(unit, day));
}

inline PurchasePlan best_response(const Instance& instance, const PriceSchedule& prices) {
  check_schedule(instance, prices);
  PurchasePlan plan(instance.units(), instance.days());
  for (int t = 0; t < instance.days(); ++t) {
    const detail::DayWindow window(instance, prices, t);
    for (int i = 0; i < instance.units(); ++i)
      if (auto choice = window.best(instance.value(i, t))) plan.assign(i, t, choice->purchase_day);
  }
  return plan;
}

/// Revenue and utility of the best response without building the plan.
/// Assumes `prices` already passed check_schedule.
inline ResponseSummary response_summary(const Instance& instance, const PriceSchedule& prices) {
  ResponseSummary out;
  for (int t = 0; t < instance.days(); ++t) {
    const detail::DayWindow window(instance, prices, t);
    for (int i = 0; i < instance.units(); ++i) {
      auto choice = window.best(instance.value(i, t));
      if (!choice) break;  // values are non-increasing, so no later unit buys either
      out.revenue += prices[choice->purchase_day];
      out.buyer_utility += choice->utility;
    }
  }
  return out;
}

inline Outcome respond_and_evaluate(const Instance& instance, const PriceSchedule& prices, PurchasePlan* plan_out = nullptr) {
  PurchasePlan plan = best_response(instance, prices);
  Outcome outcome = evaluate_outcome(instance, prices, plan);
  if (plan_out) *plan_out = std::move(plan);
  return outcome;
}

/// True iff no slot gains strictly by moving its purchase day or toggling
/// between buying and not buying, and no purchase stores longer than an
/// equally good alternative.
inline bool verify_no_deviation(const Instance& instance, const PriceSchedule& prices, const PurchasePlan& plan) {
  check_schedule(instance, prices);
  validate_plan(instance, plan);
  const Money c = instance.storage_cost();
  for (int t = 0; t < instance.days(); ++t) {
    for (int i = 0; i < instance.units(); ++i) {
      auto utility_at = [&](int s) {
        return instance.effective_value(i, t, t - s + 1) - widen(prices[s] + c * (t - s));
      };
      const auto chosen = plan.purchase_day(i, t);
      const FineMoney current = chosen ? utility_at(*chosen) : FineMoney{};
      if (chosen && current < FineMoney{}) return false;
      for (int s = 0; s <= t; ++s) {
        if (instance.decay().at(t - s + 1).is_zero()) continue;
        const FineMoney u = utility_at(s);
        if (u > current) return false;
        if (chosen && u == current && s > *chosen) return false;
      }
    }
  }
  return true;
}

}  // namespace shelfprice
