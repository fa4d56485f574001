#pragma once

// Finite candidate price sets.
//
// For the cliff model some optimal schedule prices every day t at
// v(j, s) + (t - s) c for a day s and unit j, or at the sentinel L (the
// virtual unit j = 0). C_t ranges over s >= t, C'_t over all s. Negative
// candidates are dropped, and since every price at or above L behaves like
// L, the L - k c forms of the virtual unit collapse into L itself.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "shelfprice/model.hpp"

namespace shelfprice {

class CandidateSet {
 public:
  CandidateSet() = default;
  explicit CandidateSet(std::vector<std::vector<Money>> rows) : rows_(std::move(rows)) {
    for (auto& row : rows_) {
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
      if (row.empty()) throw InstanceError("candidate row must not be empty");
    }
  }

  int days() const { return static_cast<int>(rows_.size()); }
  const std::vector<Money>& row(int day) const { return rows_[static_cast<std::size_t>(day)]; }
  std::size_t row_size(int day) const { return row(day).size(); }

  std::optional<std::size_t> ordinal(int day, Money price) const {
    const auto& r = row(day);
    auto it = std::lower_bound(r.begin(), r.end(), price);
    if (it == r.end() || *it != price) return std::nullopt;
    return static_cast<std::size_t>(it - r.begin());
  }

  struct Count {
    std::uint64_t value;
    bool saturated;
  };
  /// Product of the row sizes, saturating at uint64 max.
  Count schedule_count() const {
    std::uint64_t n = 1;
    for (const auto& r : rows_) {
      if (__builtin_mul_overflow(n, static_cast<std::uint64_t>(r.size()), &n))
        return {std::numeric_limits<std::uint64_t>::max(), true};
    }
    return {n, false};
  }

  /// Union with `extra` prices on every day.
  CandidateSet with_prices(const std::vector<Money>& extra) const {
    auto rows = rows_;
    for (auto& r : rows) r.insert(r.end(), extra.begin(), extra.end());
    return CandidateSet(std::move(rows));
  }

  /// Adds the (floored) midpoint between each pair of adjacent candidates.
  CandidateSet with_midpoints() const {
    auto rows = rows_;
    for (auto& r : rows) {
      const auto original = r;
      for (std::size_t k = 1; k < original.size(); ++k)
        r.push_back(Money::from_raw(original[k - 1].raw() + (original[k].raw() - original[k - 1].raw()) / 2));
    }
    return CandidateSet(std::move(rows));
  }

  friend bool operator==(const CandidateSet&, const CandidateSet&) = default;

 private:
  std::vector<std::vector<Money>> rows_;
};

namespace detail {

inline std::vector<Money> finish_row(std::vector<Money> row, const Instance& instance, bool prune) {
  const Money sentinel = instance.sentinel();
  const Money ceiling = prune ? instance.valuations().max_value() : sentinel - Money::from_raw(1);
  std::erase_if(row, [&](Money p) { return p < Money{} || p > ceiling; });
  row.push_back(sentinel);
  std::sort(row.begin(), row.end());
  row.erase(std::unique(row.begin(), row.end()), row.end());
  return row;
}

inline std::vector<Money> cliff_row(const Instance& instance, int day, int first_source, bool prune) {
  std::vector<Money> row;
  const Money c = instance.storage_cost();
  for (int s = first_source; s < instance.days(); ++s)
    for (int j = 0; j < instance.units(); ++j) row.push_back(instance.value(j, s) + c * (day - s));
  return finish_row(std::move(row), instance, prune);
}

}  // namespace detail

/// C_t: {v(j,s) + (t-s) c : s >= t} plus L. With `prune`, prices above the
/// largest valuation (which nobody ever pays) are folded into L.
inline std::vector<Money> candidate_prices_future(const Instance& instance, int day, bool prune = false) {
  return detail::cliff_row(instance, day, day, prune);
}

/// C'_t: {v(j,s) + (t-s) c : any s} plus L.
inline std::vector<Money> candidate_prices_all(const Instance& instance, int day, bool prune = false) {
  return detail::cliff_row(instance, day, 0, prune);
}

inline CandidateSet future_candidates(const Instance& instance, bool prune = false) {
  std::vector<std::vector<Money>> rows;
  for (int t = 0; t < instance.days(); ++t) rows.push_back(candidate_prices_future(instance, t, prune));
  return CandidateSet(std::move(rows));
}

inline CandidateSet all_candidates(const Instance& instance, bool prune = false) {
  std::vector<std::vector<Money>> rows;
  for (int t = 0; t < instance.days(); ++t) rows.push_back(candidate_prices_all(instance, t, prune));
  return CandidateSet(std::move(rows));
}

/// Grid for decaying (fractional or step) profiles:
/// {floor(v(j,s) r) + m c : any s, every positive level r, t-T < m <= T}
/// plus L. Contains C'_t, and equals it when c = 0 and the only level is 1.
inline CandidateSet decayed_candidates(const Instance& instance, bool prune = false) {
  const auto levels = instance.decay().positive_levels(instance.days());
  const Money c = instance.storage_cost();
  const int days = instance.days();
  std::vector<Money> bases;
  for (int s = 0; s < days; ++s)
    for (int j = 0; j < instance.units(); ++j)
      for (Fraction r : levels) bases.push_back(floor_money(instance.value(j, s) * r));
  std::sort(bases.begin(), bases.end());
  bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
  std::vector<std::vector<Money>> rows;
  for (int t = 0; t < days; ++t) {
    std::vector<Money> row;
    for (Money base : bases)
      for (int m = t - days + 1; m <= days; ++m) row.push_back(base + c * m);
    rows.push_back(detail::finish_row(std::move(row), instance, prune));
  }
  return CandidateSet(std::move(rows));
}

/// The grid the oracle searches by default for this instance's decay model.
inline CandidateSet oracle_grid(const Instance& instance) {
  return instance.decay().is_cliff() ? all_candidates(instance) : decayed_candidates(instance);
}

/// Every day priced at L.
inline CandidateSet prohibitive_grid(const Instance& instance) {
  return CandidateSet(std::vector<std::vector<Money>>(static_cast<std::size_t>(instance.days()), {instance.sentinel()}));
}

}  // namespace shelfprice
