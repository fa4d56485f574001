#pragma once

// Optimal pre-announced prices for the cliff (d-day shelf-life) model.
//
// The state at consumption day t is the window of prices (x_1..x_{d-1}) of
// days t-d+1..t-1, each an ordinal into that day's candidate row C'. Goods
// consumed on day t are bought at the cheapest window day counting storage
// (latest day on ties), so choosing x_d for day t fixes day t's revenue
// q'_t * p'_t and the successor state (x_2..x_d). R is filled backwards from
// day T; the first d-1 prices are picked last, adding the revenue of days
// 1..d-1 whose purchase windows are cut off at day 1.
//
// Prices above the largest valuation are never paid by anyone, so with
// pruning they are folded into the sentinel L and rows stay at most N*T+1
// long. Within a day all states are independent and evaluated in parallel.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "shelfprice/buyer.hpp"
#include "shelfprice/candidates.hpp"
#include "shelfprice/model.hpp"
#include "shelfprice/parallel.hpp"

namespace shelfprice {

/// Which prices are tried for the newest window slot x_d.
enum class TransitionSet {
  algorithm,    ///< C_t plus the propagated prices x_i + (d - i) c
  future_only,  ///< C_t alone
  full_row,     ///< all of C'_t
};

enum class Reconstruction {
  automatic,     ///< store_argmax unless the argmax table exceeds memory_cap_bytes
  store_argmax,  ///< keep S for every day
  checkpoint,    ///< keep R at ~sqrt(T) checkpoint days and recompute segments
};

struct DpOptions {
  unsigned threads = 0;  ///< 0 = hardware concurrency
  TransitionSet transitions = TransitionSet::algorithm;
  bool prune_prohibitive = true;
  Reconstruction reconstruction = Reconstruction::automatic;
  std::size_t memory_cap_bytes = std::size_t{1} << 30;
  std::uint64_t max_layer_states = std::uint64_t{1} << 28;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct DpStats {
  std::uint64_t states = 0;
  std::uint64_t transitions = 0;
  std::uint64_t largest_layer = 0;
  std::uint64_t recomputed_layers = 0;
  Reconstruction reconstruction = Reconstruction::store_argmax;
  double wall_ms = 0;
};

struct SolveResult {
  PriceSchedule prices;
  Outcome outcome;
  PurchasePlan plan;
  DpStats stats;
};

struct WindowCost {
  Money cost;
  int buy_index;  ///< 0-based position in the window
};

/// Cheapest way to obtain a unit for the last day of `window` (prices of
/// consecutive days ending at the consumption day): min_k x_k + storage, the
/// latest k on ties.
inline WindowCost window_cost(std::span<const Money> window, Money storage_cost) {
  if (window.empty()) throw std::invalid_argument("window_cost: empty window");
  const auto last = static_cast<std::int64_t>(window.size()) - 1;
  WindowCost best{window[0] + storage_cost * last, 0};
  for (std::int64_t k = 1; k <= last; ++k) {
    const Money cost = window[static_cast<std::size_t>(k)] + storage_cost * (last - k);
    if (cost <= best.cost) best = {cost, static_cast<int>(k)};
  }
  return best;
}

/// q'_t: how many units of day t are worth at least `cost`.
inline int window_demand(const Instance& instance, int day, Money cost) {
  int q = 0;
  for (Money v : instance.valuations().day(day)) {
    if (v < cost) break;
    ++q;
  }
  return q;
}

namespace detail {

class CliffDp {
 public:
  CliffDp(const Instance& instance, const DpOptions& options)
      : instance_(instance),
        options_(options),
        days_(instance.days()),
        d_(instance.decay().shelf_life()),
        c_(instance.storage_cost().raw()),
        rows_(all_candidates(instance, options.prune_prohibitive)) {
    for (int t = 0; t < days_; ++t) {
      std::vector<std::int64_t> row;
      for (Money p : rows_.row(t)) row.push_back(p.raw());
      raw_rows_.push_back(std::move(row));
      std::vector<std::int64_t> values;
      for (Money v : instance.valuations().day(t)) values.push_back(v.raw());
      values_.push_back(std::move(values));

      std::vector<std::uint32_t> future;
      for (Money p : candidate_prices_future(instance, t, options.prune_prohibitive)) {
        auto o = rows_.ordinal(t, p);
        if (!o) throw std::logic_error("C_t is not contained in C'_t");
        future.push_back(static_cast<std::uint32_t>(*o));
      }
      future_.push_back(std::move(future));
    }
    build_propagation();
    for (int t = d_ - 1; t <= days_; ++t) geometry_.push_back(make_geometry(t));
  }

  SolveResult solve() {
    const auto start = std::chrono::steady_clock::now();
    std::uint64_t argmax_bytes = 0;
    for (int t = d_ - 1; t < days_; ++t) argmax_bytes += geometry(t).size * sizeof(std::uint32_t);
    Reconstruction mode = options_.reconstruction;
    if (mode == Reconstruction::automatic)
      mode = argmax_bytes <= options_.memory_cap_bytes ? Reconstruction::store_argmax : Reconstruction::checkpoint;
    stats_.reconstruction = mode;

    const int checkpoint_stride =
        std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(days_ - d_ + 1)))));
    auto is_checkpoint = [&](int t) { return t >= d_ && (t - d_) % checkpoint_stride == 0; };

    // Backward pass.
    std::vector<std::int64_t> next(geometry(days_).size, 0);
    std::vector<std::int64_t> current;
    for (int t = days_ - 1; t >= d_ - 1; --t) {
      std::vector<std::uint32_t>* argmax = nullptr;
      if (mode == Reconstruction::store_argmax) {
        argmax_[t] = std::vector<std::uint32_t>(geometry(t).size);
        argmax = &argmax_[t];
      }
      compute_layer(t, next, current, argmax);
      stats_.states += geometry(t).size;
      stats_.largest_layer = std::max(stats_.largest_layer, geometry(t).size);
      if (mode == Reconstruction::checkpoint && is_checkpoint(t)) checkpoints_[t] = current;
      std::swap(next, current);
    }
    const std::vector<std::int64_t>& first_layer = next;

    // First d-1 prices: truncated-window revenue plus R(d).
    const auto [first_state, best_total] = select_first_window(first_layer);
    std::vector<Money> prices(static_cast<std::size_t>(days_));
    {
      const auto ords = decode(d_ - 1, first_state);
      for (int k = 0; k < d_ - 1; ++k) prices[static_cast<std::size_t>(k)] = rows_.row(k)[ords[static_cast<std::size_t>(k)]];
    }

    // Forward reconstruction.
    std::uint64_t state = first_state;
    for (int t = d_ - 1; t < days_; ++t) {
      std::uint32_t ord = 0;
      if (mode == Reconstruction::store_argmax) {
        ord = argmax_[t][state];
      } else {
        ord = evaluate_state(t, state, layer_above(t)).ord;
      }
      prices[static_cast<std::size_t>(t)] = rows_.row(t)[ord];
      state = successor(t, state, ord);
    }

    SolveResult result;
    result.prices = PriceSchedule{std::move(prices)};
    result.outcome = respond_and_evaluate(instance_, result.prices, &result.plan);
    if (result.outcome.revenue.raw() != best_total)
      throw std::logic_error("DP revenue " + Money::from_raw(best_total).to_string() +
                             " disagrees with best-response revenue " + result.outcome.revenue.to_string());
    stats_.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    result.stats = stats_;
    return result;
  }

 private:
  struct Geometry {
    int day = 0;                       // consumption day this layer feeds
    std::vector<std::uint64_t> dims;   // row sizes of days day-d+1 .. day-1
    std::uint64_t size = 1;
    std::uint64_t tail = 1;            // product of dims[1..]
  };

  struct Choice {
    std::int64_t value;
    std::uint32_t ord;
    std::uint32_t tried;
  };

  Geometry make_geometry(int t) const {
    Geometry g;
    g.day = t;
    for (int k = 0; k < d_ - 1; ++k) {
      const auto n = static_cast<std::uint64_t>(rows_.row_size(t - d_ + 1 + k));
      g.dims.push_back(n);
      if (__builtin_mul_overflow(g.size, n, &g.size) || g.size > options_.max_layer_states)
        throw StateSpaceTooLarge("DP layer for day " + std::to_string(t + 1) + " exceeds " +
                                 std::to_string(options_.max_layer_states) + " states");
    }
    g.tail = g.dims.empty() ? 1 : g.size / g.dims.front();
    return g;
  }

  const Geometry& geometry(int t) const { return geometry_[static_cast<std::size_t>(t - (d_ - 1))]; }

  std::vector<std::uint32_t> decode(int t, std::uint64_t index) const {
    const auto& g = geometry(t);
    std::vector<std::uint32_t> ords(g.dims.size());
    for (std::size_t k = g.dims.size(); k-- > 0;) {
      ords[k] = static_cast<std::uint32_t>(index % g.dims[k]);
      index /= g.dims[k];
    }
    return ords;
  }

  std::uint64_t successor(int t, std::uint64_t index, std::uint32_t ord) const {
    if (d_ == 1) return 0;
    const auto& g = geometry(t);
    return (index % g.tail) * rows_.row_size(t) + ord;
  }

  // propagation_[t][k][o]: ordinal in row t of (price o of day t-d+1+k) + (d-1-k) c.
  void build_propagation() {
    propagation_.resize(static_cast<std::size_t>(days_));
    const Money ceiling =
        options_.prune_prohibitive ? instance_.valuations().max_value() : instance_.sentinel() - Money::from_raw(1);
    for (int t = d_ - 1; t < days_; ++t) {
      auto& per_slot = propagation_[static_cast<std::size_t>(t)];
      const auto sentinel_ord = static_cast<std::uint32_t>(rows_.row_size(t) - 1);
      for (int k = 0; k < d_ - 1; ++k) {
        const int source = t - d_ + 1 + k;
        std::vector<std::uint32_t> map;
        for (Money x : rows_.row(source)) {
          if (x == instance_.sentinel()) {
            map.push_back(sentinel_ord);
            continue;
          }
          const Money shifted = x + instance_.storage_cost() * (t - source);
          if (shifted > ceiling) {
            map.push_back(sentinel_ord);
            continue;
          }
          auto o = rows_.ordinal(t, shifted);
          if (!o) throw std::logic_error("propagated price missing from C'_t");
          map.push_back(static_cast<std::uint32_t>(*o));
        }
        per_slot.push_back(std::move(map));
      }
    }
  }

  std::int64_t demand(int t, std::int64_t cost) const {
    std::int64_t q = 0;
    for (std::int64_t v : values_[static_cast<std::size_t>(t)]) {
      if (v < cost) break;
      ++q;
    }
    return q;
  }

  // Best x_d for one state of day t given R(t+1).
  Choice evaluate_state(int t, std::uint64_t index, const std::vector<std::int64_t>& next) const {
    const auto& g = geometry(t);
    std::uint32_t ords[64];
    {
      std::uint64_t rest = index;
      for (std::size_t k = g.dims.size(); k-- > 0;) {
        ords[k] = static_cast<std::uint32_t>(rest % g.dims[k]);
        rest /= g.dims[k];
      }
    }
    std::int64_t prefix_cost = std::numeric_limits<std::int64_t>::max();
    std::int64_t prefix_paid = 0;
    for (int k = 0; k < d_ - 1; ++k) {
      const std::int64_t x = raw_rows_[static_cast<std::size_t>(t - d_ + 1 + k)][ords[k]];
      const std::int64_t cost = x + c_ * (d_ - 1 - k);
      if (cost <= prefix_cost) {
        prefix_cost = cost;
        prefix_paid = x;
      }
    }
    const auto& row = raw_rows_[static_cast<std::size_t>(t)];
    const std::uint64_t base = d_ == 1 ? 0 : (index % g.tail) * row.size();
    const bool single_next = d_ == 1;

    Choice best{std::numeric_limits<std::int64_t>::min(), 0, 0};
    auto consider = [&](std::uint32_t o) {
      const std::int64_t x = row[o];
      const bool today = x <= prefix_cost;
      const std::int64_t cost = today ? x : prefix_cost;
      const std::int64_t paid = today ? x : prefix_paid;
      const std::int64_t gain = demand(t, cost) * paid + next[single_next ? 0 : base + o];
      ++best.tried;
      if (gain > best.value || (gain == best.value && o < best.ord)) {
        best.value = gain;
        best.ord = o;
      }
    };
    switch (options_.transitions) {
      case TransitionSet::full_row:
        for (std::uint32_t o = 0; o < row.size(); ++o) consider(o);
        break;
      case TransitionSet::future_only:
        for (std::uint32_t o : future_[static_cast<std::size_t>(t)]) consider(o);
        break;
      case TransitionSet::algorithm:
        for (std::uint32_t o : future_[static_cast<std::size_t>(t)]) consider(o);
        for (int k = 0; k < d_ - 1; ++k) consider(propagation_[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)][ords[k]]);
        break;
    }
    return best;
  }

  void check_deadline() const {
    if (options_.deadline && std::chrono::steady_clock::now() > *options_.deadline)
      throw SolveTimeout("DP exceeded its time limit");
  }

  void compute_layer(int t, const std::vector<std::int64_t>& next, std::vector<std::int64_t>& out,
                     std::vector<std::uint32_t>* argmax) {
    const auto& g = geometry(t);
    out.assign(g.size, 0);
    const std::size_t chunks = std::min<std::uint64_t>(g.size, 512);
    std::vector<std::uint64_t> tried(chunks, 0);
    parallel_chunks(g.size, chunks, options_.threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
      check_deadline();
      std::uint64_t local = 0;
      for (std::size_t idx = begin; idx < end; ++idx) {
        const Choice choice = evaluate_state(t, idx, next);
        out[idx] = choice.value;
        if (argmax) (*argmax)[idx] = choice.ord;
        local += choice.tried;
      }
      tried[chunk] = local;
    });
    for (auto n : tried) stats_.transitions += n;
  }

  // R(t+1) for the forward pass in checkpoint mode.
  const std::vector<std::int64_t>& layer_above(int t) {
    const int wanted = t + 1;
    if (wanted == days_) {
      if (zeros_.size() != geometry(days_).size) zeros_.assign(geometry(days_).size, 0);
      return zeros_;
    }
    if (auto it = checkpoints_.find(wanted); it != checkpoints_.end()) return it->second;
    if (auto it = segment_.find(wanted); it != segment_.end()) return it->second;
    segment_.clear();
    int top = wanted;
    while (top < days_ && !checkpoints_.count(top)) ++top;
    std::vector<std::int64_t> above =
        top == days_ ? std::vector<std::int64_t>(geometry(days_).size, 0) : checkpoints_.at(top);
    for (int u = top - 1; u >= wanted; --u) {
      std::vector<std::int64_t> layer;
      compute_layer(u, above, layer, nullptr);
      ++stats_.recomputed_layers;
      segment_[u] = layer;
      above = std::move(layer);
    }
    return segment_.at(wanted);
  }

  std::pair<std::uint64_t, std::int64_t> select_first_window(const std::vector<std::int64_t>& first_layer) const {
    const auto& g = geometry(d_ - 1);
    const std::size_t chunks = std::min<std::uint64_t>(g.size, 512);
    std::vector<std::pair<std::uint64_t, std::int64_t>> best(chunks, {0, std::numeric_limits<std::int64_t>::min()});
    parallel_chunks(g.size, chunks, options_.threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
      for (std::size_t idx = begin; idx < end; ++idx) {
        const auto ords = decode(d_ - 1, idx);
        std::int64_t total = first_layer[idx];
        for (int u = 0; u < d_ - 1; ++u) {
          std::int64_t cost = std::numeric_limits<std::int64_t>::max();
          std::int64_t paid = 0;
          for (int s = 0; s <= u; ++s) {
            const std::int64_t x = raw_rows_[static_cast<std::size_t>(s)][ords[static_cast<std::size_t>(s)]];
            const std::int64_t with_storage = x + c_ * (u - s);
            if (with_storage <= cost) {
              cost = with_storage;
              paid = x;
            }
          }
          total += demand(u, cost) * paid;
        }
        if (total > best[chunk].second) best[chunk] = {idx, total};
      }
    });
    auto winner = best.front();
    for (const auto& b : best)
      if (b.second > winner.second) winner = b;
    return winner;
  }

  const Instance& instance_;
  DpOptions options_;
  int days_;
  int d_;
  std::int64_t c_;
  CandidateSet rows_;
  std::vector<std::vector<std::int64_t>> raw_rows_;
  std::vector<std::vector<std::int64_t>> values_;
  std::vector<std::vector<std::uint32_t>> future_;
  std::vector<std::vector<std::vector<std::uint32_t>>> propagation_;
  std::vector<Geometry> geometry_;
  std::map<int, std::vector<std::uint32_t>> argmax_;
  std::map<int, std::vector<std::int64_t>> checkpoints_;
  std::map<int, std::vector<std::int64_t>> segment_;
  std::vector<std::int64_t> zeros_;
  DpStats stats_;
};

}  // namespace detail

/// Optimal schedule for a cliff-decay instance. The returned outcome comes
/// from an independent best-response evaluation of the schedule; a
/// disagreement with the DP value throws std::logic_error.
inline SolveResult solve_cliff(const Instance& instance, const DpOptions& options = {}) {
  if (!instance.decay().is_cliff())
    throw UnsupportedModel("solve_cliff needs a cliff decay profile, got " + instance.decay().describe());
  if (instance.decay().shelf_life() > 64) throw StateSpaceTooLarge("shelf-life above 64 is not supported");
  detail::CliffDp dp(instance, options);
  return dp.solve();
}

}  // namespace shelfprice
