#pragma once

// Domain types: valuations, decay profiles, instances, price schedules,
// purchase plans and outcomes.
//
// Indices are 0-based in the API: unit 0 is the highest value of a day,
// day 0 is the first day. A purchase on day s for consumption on day t
// has storage length l = t - s + 1 (l = 1 means same-day).

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "shelfprice/errors.hpp"
#include "shelfprice/money.hpp"

namespace shelfprice {

enum class BuyerMode { single, multi };

inline const char* to_string(BuyerMode mode) { return mode == BuyerMode::single ? "single" : "multi"; }

/// N x T grid of unit values; each day is non-increasing in the unit index.
class ValuationMatrix {
 public:
  ValuationMatrix() = default;

  /// `rows[t]` holds the N values of day t. With `sort_days` each day is put
  /// into descending order (the canonical multi-buyer form); otherwise an
  /// unsorted day is an error.
  static ValuationMatrix from_days(const std::vector<std::vector<Money>>& rows, bool sort_days) {
    if (rows.empty()) throw InstanceError("valuations: T must be positive");
    const std::size_t units = rows.front().size();
    if (units == 0) throw InstanceError("valuations: N must be positive");
    ValuationMatrix m;
    m.units_ = static_cast<int>(units);
    m.days_ = static_cast<int>(rows.size());
    m.values_.reserve(units * rows.size());
    for (std::size_t t = 0; t < rows.size(); ++t) {
      std::vector<Money> day = rows[t];
      if (day.size() != units)
        throw InstanceError("valuations: day " + std::to_string(t + 1) + " has " + std::to_string(day.size()) +
                            " values, expected " + std::to_string(units));
      for (Money v : day)
        if (v < Money{}) throw InstanceError("valuations: negative value on day " + std::to_string(t + 1));
      if (sort_days) {
        std::sort(day.begin(), day.end(), std::greater<>{});
      } else if (!std::is_sorted(day.begin(), day.end(), std::greater<>{})) {
        throw InstanceError("valuations: marginal values on day " + std::to_string(t + 1) + " are not non-increasing");
      }
      m.values_.insert(m.values_.end(), day.begin(), day.end());
    }
    m.max_ = *std::max_element(m.values_.begin(), m.values_.end());
    return m;
  }

  int units() const { return units_; }
  int days() const { return days_; }
  Money at(int unit, int day) const { return values_[static_cast<std::size_t>(day * units_ + unit)]; }
  /// Values of one day, highest first.
  std::span<const Money> day(int day) const {
    return {values_.data() + static_cast<std::size_t>(day * units_), static_cast<std::size_t>(units_)};
  }
  Money max_value() const { return max_; }

  friend bool operator==(const ValuationMatrix&, const ValuationMatrix&) = default;

 private:
  int units_ = 0;
  int days_ = 0;
  std::vector<Money> values_;
  Money max_{};
};

/// Non-increasing step function r(l), l >= 1, with r(1) = 1.
class DecayProfile {
 public:
  enum class Kind { cliff, fractional, step };

  static DecayProfile cliff(int shelf_life) {
    if (shelf_life < 1) throw InstanceError("decay: shelf-life must be at least 1");
    DecayProfile p;
    p.kind_ = Kind::cliff;
    p.shelf_life_ = shelf_life;
    return p;
  }

  static DecayProfile fractional(int shelf_life, Fraction residual) {
    if (shelf_life < 1) throw InstanceError("decay: shelf-life must be at least 1");
    if (residual.is_one()) throw InstanceError("decay: fractional residual must be below 1");
    DecayProfile p;
    p.kind_ = Kind::fractional;
    p.shelf_life_ = shelf_life;
    p.residual_ = residual;
    return p;
  }

  /// `levels[l-1]` = r(l). Beyond the listed lengths the last level holds.
  static DecayProfile step(std::vector<Fraction> levels) {
    if (levels.empty()) throw InstanceError("decay: step profile needs at least one level");
    if (!levels.front().is_one()) throw InstanceError("decay: r(1) must be 1");
    if (!std::is_sorted(levels.begin(), levels.end(), std::greater<>{}))
      throw InstanceError("decay: r must be non-increasing");
    DecayProfile p;
    p.kind_ = Kind::step;
    p.levels_ = std::move(levels);
    return p;
  }

  /// Never loses value within the horizon.
  static DecayProfile unlimited(int horizon) { return cliff(horizon); }

  Kind kind() const { return kind_; }
  bool is_cliff() const { return kind_ == Kind::cliff; }
  /// d for cliff and fractional profiles.
  int shelf_life() const { return shelf_life_; }
  Fraction residual() const { return residual_; }
  const std::vector<Fraction>& levels() const { return levels_; }

  Fraction at(int length) const {
    switch (kind_) {
      case Kind::cliff:
        return length <= shelf_life_ ? Fraction::one() : Fraction::zero();
      case Kind::fractional:
        return length <= shelf_life_ ? Fraction::one() : residual_;
      case Kind::step:
        return levels_[static_cast<std::size_t>(std::min<int>(length, static_cast<int>(levels_.size())) - 1)];
    }
    return Fraction::zero();
  }

  /// Largest l <= horizon with r(l) > 0.
  int span(int horizon) const {
    int l = horizon;
    while (l > 1 && at(l).is_zero()) --l;
    return l;
  }

  /// Distinct positive values of r(l) over l = 1..horizon, descending.
  std::vector<Fraction> positive_levels(int horizon) const {
    std::vector<Fraction> out;
    for (int l = 1; l <= horizon; ++l) {
      const Fraction r = at(l);
      if (!r.is_zero() && (out.empty() || out.back() != r)) out.push_back(r);
    }
    return out;
  }

  /// Shelf-life beyond the horizon is unobservable; clamp d to T.
  DecayProfile normalized(int horizon) const {
    DecayProfile p = *this;
    if (kind_ != Kind::step) p.shelf_life_ = std::min(shelf_life_, horizon);
    return p;
  }

  std::string describe() const {
    switch (kind_) {
      case Kind::cliff:
        return "cliff(d=" + std::to_string(shelf_life_) + ")";
      case Kind::fractional:
        return "fractional(d=" + std::to_string(shelf_life_) + ",r=" + residual_.to_string() + ")";
      case Kind::step: {
        std::string s = "step(";
        for (std::size_t i = 0; i < levels_.size(); ++i) s += (i ? "," : "") + levels_[i].to_string();
        return s + ")";
      }
    }
    return "?";
  }

  friend bool operator==(const DecayProfile&, const DecayProfile&) = default;

 private:
  Kind kind_ = Kind::cliff;
  int shelf_life_ = 1;
  Fraction residual_{};
  std::vector<Fraction> levels_;
};

/// The full game: valuations, decay, linear storage cost and buyer mode.
class Instance {
 public:
  Instance(ValuationMatrix valuations, DecayProfile decay, Money storage_cost, BuyerMode mode)
      : valuations_(std::move(valuations)), decay_(std::move(decay)), storage_cost_(storage_cost), mode_(mode) {
    if (valuations_.days() <= 0 || valuations_.units() <= 0) throw InstanceError("instance: N and T must be positive");
    if (storage_cost_ < Money{}) throw InstanceError("instance: storage cost must be non-negative");
    if (decay_.kind() == DecayProfile::Kind::step &&
        static_cast<int>(decay_.levels().size()) != valuations_.days())
      throw InstanceError("instance: step decay must list one level per day");
    decay_ = decay_.normalized(valuations_.days());
    const auto l = checked_mul(valuations_.max_value(), static_cast<std::int64_t>(units()) * days() + 1);
    const auto sentinel = l ? checked_add(*l, Money::units(1)) : std::nullopt;
    if (!sentinel) throw PrecisionOverflow("instance: valuations too large for the sentinel price");
    sentinel_ = *sentinel;
  }

  const ValuationMatrix& valuations() const { return valuations_; }
  const DecayProfile& decay() const { return decay_; }
  Money storage_cost() const { return storage_cost_; }
  BuyerMode mode() const { return mode_; }
  int units() const { return valuations_.units(); }
  int days() const { return valuations_.days(); }
  Money value(int unit, int day) const { return valuations_.at(unit, day); }

  /// The "no sale" price L = (N*T + 1) * max v + 1; no buyer ever pays it.
  Money sentinel() const { return sentinel_; }

  /// v'(i, t, l) = v(i, t) * r(l).
  FineMoney effective_value(int unit, int day, int length) const { return value(unit, day) * decay_.at(length); }

  Instance with_decay(DecayProfile decay) const { return {valuations_, std::move(decay), storage_cost_, mode_}; }
  Instance with_storage_cost(Money c) const { return {valuations_, decay_, c, mode_}; }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  ValuationMatrix valuations_;
  DecayProfile decay_;
  Money storage_cost_;
  BuyerMode mode_;
  Money sentinel_;
};

/// Pre-announced prices p_1..p_T.
struct PriceSchedule {
  std::vector<Money> prices;

  int days() const { return static_cast<int>(prices.size()); }
  Money operator[](int day) const { return prices[static_cast<std::size_t>(day)]; }
  friend bool operator==(const PriceSchedule&, const PriceSchedule&) = default;
  friend auto operator<=>(const PriceSchedule&, const PriceSchedule&) = default;

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < prices.size(); ++i) s += (i ? "," : "") + prices[i].to_string();
    return s;
  }
};

inline void check_schedule(const Instance& instance, const PriceSchedule& prices) {
  if (prices.days() != instance.days())
    throw InstanceError("schedule has " + std::to_string(prices.days()) + " prices, instance has T=" +
                        std::to_string(instance.days()));
  for (Money p : prices.prices)
    if (p < Money{}) throw InstanceError("schedule: prices must be non-negative");
}

/// For every consumption slot (unit i, day t): the purchase day, or none.
class PurchasePlan {
 public:
  PurchasePlan() = default;
  PurchasePlan(int units, int days) : units_(units), days_(days), purchase_(static_cast<std::size_t>(units * days)) {}

  int units() const { return units_; }
  int days() const { return days_; }
  std::optional<int> purchase_day(int unit, int day) const { return purchase_[index(unit, day)]; }
  void assign(int unit, int day, std::optional<int> purchase) { purchase_[index(unit, day)] = purchase; }

  bool empty() const {
    return std::none_of(purchase_.begin(), purchase_.end(), [](const auto& s) { return s.has_value(); });
  }

  /// q_s: units bought on each day.
  std::vector<int> quantities() const {
    std::vector<int> q(static_cast<std::size_t>(days_), 0);
    for (const auto& s : purchase_)
      if (s && *s >= 0 && *s < days_) ++q[static_cast<std::size_t>(*s)];
    return q;
  }

  friend bool operator==(const PurchasePlan&, const PurchasePlan&) = default;

 private:
  std::size_t index(int unit, int day) const { return static_cast<std::size_t>(day * units_ + unit); }

  int units_ = 0;
  int days_ = 0;
  std::vector<std::optional<int>> purchase_;
};

struct Outcome {
  Money revenue{};
  FineMoney buyer_utility{};
  std::vector<int> quantities;

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

/// Throws InstanceError unless every assignment buys on or before its
/// consumption day, inside [1, T], at a storage length with r(l) > 0.
inline void validate_plan(const Instance& instance, const PurchasePlan& plan) {
  if (plan.units() != instance.units() || plan.days() != instance.days())
    throw InstanceError("plan dimensions do not match the instance");
  for (int t = 0; t < plan.days(); ++t) {
    for (int i = 0; i < plan.units(); ++i) {
      const auto s = plan.purchase_day(i, t);
      if (!s) continue;
      const std::string slot = "slot (" + std::to_string(i + 1) + "," + std::to_string(t + 1) + ")";
      if (*s < 0 || *s >= instance.days()) throw InstanceError(slot + " purchases outside [1,T]");
      if (*s > t) throw InstanceError(slot + " purchases after consumption");
      if (instance.decay().at(t - *s + 1).is_zero()) throw InstanceError(slot + " consumes a worthless unit");
    }
  }
}

/// Revenue sum q_s * p_s and utility sum v'(i,t,l) - p_s - c (t - s).
inline Outcome evaluate_outcome(const Instance& instance, const PriceSchedule& prices, const PurchasePlan& plan) {
  check_schedule(instance, prices);
  validate_plan(instance, plan);
  Outcome out;
  out.quantities = plan.quantities();
  for (int s = 0; s < instance.days(); ++s) out.revenue += prices[s] * out.quantities[static_cast<std::size_t>(s)];
  for (int t = 0; t < instance.days(); ++t) {
    for (int i = 0; i < instance.units(); ++i) {
      const auto s = plan.purchase_day(i, t);
      if (!s) continue;
      out.buyer_utility += instance.effective_value(i, t, t - *s + 1) -
                           widen(prices[*s] + instance.storage_cost() * (t - *s));
    }
  }
  return out;
}

}  // namespace shelfprice
