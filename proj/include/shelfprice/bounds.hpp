#pragma once

// Revenue bounds relative to M, the best revenue when nothing can be stored.
//
//  * d-offset scheme: for each offset, price every d-th day at its no-storage
//    optimum and every other day at L. One of the d schedules earns at least
//    M/d.
//  * Adversarial family (a, d, k): k blocks of d days where day t of a block
//    wants a^{d-t} units worth b(a-1)/(a^{d-t+1}-1), with
//    b = prod_t (a^{d-t+1} - 1). With k >= 2 block i (0-based) is scaled by
//    b^{k-i}; a single block is left unscaled. The optimum is below
//    (1 + 1/(a-1)) M/d.
//  * Fractional decay to r after d days: the optimum is at least (1-r) M/d.
//
// All inequalities are checked cross-multiplied in integers.

#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "shelfprice/buyer.hpp"
#include "shelfprice/candidates.hpp"
#include "shelfprice/dp_solver.hpp"
#include "shelfprice/oracle.hpp"

namespace shelfprice {

/// Best single-day posted price max_j j * v(j, t): returns the lowest price
/// among ties, or L when the day is worth nothing.
inline Money single_day_price(const Instance& instance, int day) {
  Money best_revenue{};
  Money price = instance.sentinel();
  const auto values = instance.valuations().day(day);
  for (std::size_t j = 0; j < values.size(); ++j) {
    const Money revenue = values[j] * static_cast<std::int64_t>(j + 1);
    if (revenue > Money{} && revenue >= best_revenue) {
      best_revenue = revenue;
      price = values[j];
    }
  }
  return price;
}

/// M = sum_t max_j j * v(j, t).
inline Money compute_M(const Instance& instance) {
  Money total{};
  for (int t = 0; t < instance.days(); ++t) {
    Money best{};
    const auto values = instance.valuations().day(t);
    for (std::size_t j = 0; j < values.size(); ++j) best = std::max(best, values[j] * static_cast<std::int64_t>(j + 1));
    total += best;
  }
  return total;
}

struct LowerBoundSchedules {
  std::vector<PriceSchedule> schedules;  ///< one per offset 1..d
  std::vector<Money> revenues;
  Money best{};
  Money M{};
  bool holds = false;  ///< d * best >= M
};

inline LowerBoundSchedules lower_bound_schedules(const Instance& instance) {
  if (!instance.decay().is_cliff()) throw UnsupportedModel("lower_bound_schedules needs a cliff decay profile");
  const int d = instance.decay().shelf_life();
  LowerBoundSchedules out;
  out.M = compute_M(instance);
  for (int offset = 0; offset < d; ++offset) {
    PriceSchedule schedule{std::vector<Money>(static_cast<std::size_t>(instance.days()), instance.sentinel())};
    for (int t = offset; t < instance.days(); t += d) schedule.prices[static_cast<std::size_t>(t)] = single_day_price(instance, t);
    const Money revenue = response_summary(instance, schedule).revenue;
    out.best = std::max(out.best, revenue);
    out.schedules.push_back(std::move(schedule));
    out.revenues.push_back(revenue);
  }
  out.holds = static_cast<int128>(out.best.raw()) * d >= out.M.raw();
  return out;
}

struct AdversarialConfig {
  int a = 2;
  int d = 2;
  int k = 1;
};

namespace detail {

inline std::int64_t checked_power(std::int64_t base, int exponent) {
  std::int64_t out = 1;
  for (int i = 0; i < exponent; ++i)
    if (__builtin_mul_overflow(out, base, &out)) throw PrecisionOverflow("adversarial instance: a^e overflows");
  return out;
}

}  // namespace detail

/// b = prod_{t=1..d} (a^{d-t+1} - 1).
inline std::int64_t adversarial_b(const AdversarialConfig& config) {
  if (config.a < 2 || config.d < 1 || config.k < 1) throw InstanceError("adversarial config needs a >= 2, d >= 1, k >= 1");
  std::int64_t b = 1;
  for (int t = 1; t <= config.d; ++t)
    if (__builtin_mul_overflow(b, detail::checked_power(config.a, config.d - t + 1) - 1, &b))
      throw PrecisionOverflow("adversarial instance: b overflows");
  return b;
}

/// Value multiplier of block `block` (0-based): b^{k-block} when there are
/// several blocks, 1 for the lone block of k = 1.
inline std::int64_t adversarial_block_scale(const AdversarialConfig& config, int block) {
  if (config.k == 1) return 1;
  return detail::checked_power(adversarial_b(config), config.k - block);
}

/// Single buyer, T = k d, c = 0, cliff(d). Refuses configurations whose
/// values do not fit in Money instead of rounding them.
inline Instance adversarial_instance(const AdversarialConfig& config) {
  const std::int64_t b = adversarial_b(config);
  const int units = static_cast<int>(detail::checked_power(config.a, config.d - 1));
  std::vector<std::vector<Money>> rows;
  for (int block = 0; block < config.k; ++block) {
    const std::int64_t scale = adversarial_block_scale(config, block);
    for (int t = 1; t <= config.d; ++t) {
      const std::int64_t wanted = detail::checked_power(config.a, config.d - t);
      const std::int64_t base = b * (config.a - 1) / (detail::checked_power(config.a, config.d - t + 1) - 1);
      std::int64_t whole{};
      if (__builtin_mul_overflow(base, scale, &whole)) throw PrecisionOverflow("adversarial instance: value overflows");
      const auto value = checked_mul(Money::units(1), whole);
      if (!value) throw PrecisionOverflow("adversarial instance: value does not fit in Money");
      std::vector<Money> day(static_cast<std::size_t>(units), Money{});
      for (std::int64_t j = 0; j < wanted; ++j) day[static_cast<std::size_t>(j)] = *value;
      rows.push_back(std::move(day));
    }
  }
  return Instance(ValuationMatrix::from_days(rows, false), DecayProfile::cliff(config.d), Money{}, BuyerMode::single);
}

struct BoundCheck {
  std::string name;
  std::string lhs;
  std::string relation;
  std::string rhs;
  bool passed = false;
};

struct BoundReport {
  std::string title;
  std::vector<std::pair<std::string, std::string>> facts;
  std::vector<BoundCheck> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.passed; });
  }

  void add(std::string name, const std::string& lhs, std::string relation, const std::string& rhs, bool ok) {
    checks.push_back({std::move(name), lhs, std::move(relation), rhs, ok});
  }

  std::string to_text() const {
    std::string out = title + "\n";
    for (const auto& [k, v] : facts) out += "  " + k + ": " + v + "\n";
    for (const auto& c : checks)
      out += std::string(c.passed ? "PASS" : "FAIL") + "  " + c.name + ": " + c.lhs + " " + c.relation + " " + c.rhs + "\n";
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["title"] = title;
    for (const auto& [k, v] : facts) j["facts"][k] = v;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks)
      j["checks"].push_back({{"name", c.name}, {"lhs", c.lhs}, {"relation", c.relation}, {"rhs", c.rhs}, {"passed", c.passed}});
    j["passed"] = passed();
    return j;
  }
};

namespace detail {

// A raw value at the given precision, printed as a trimmed decimal.
inline std::string scaled_product(int128 raw, int decimals) {
  return detail::format_fixed(raw, decimals, true);
}

inline Instance sub_instance(const Instance& instance, int first_day, int days) {
  std::vector<std::vector<Money>> rows;
  for (int t = first_day; t < first_day + days; ++t) {
    const auto v = instance.valuations().day(t);
    rows.emplace_back(v.begin(), v.end());
  }
  return Instance(ValuationMatrix::from_days(rows, false), instance.decay().normalized(days), instance.storage_cost(),
                  instance.mode());
}

}  // namespace detail

struct CertifyOptions {
  unsigned threads = 0;
  int oracle_max_days = 6;
  std::uint64_t oracle_budget = 10'000'000;
};

/// Cliff instance: d * OPT >= M, and the best offset schedule also reaches M/d.
inline BoundReport certify_lower_bound(const Instance& instance, const CertifyOptions& options = {}) {
  const auto lower = lower_bound_schedules(instance);
  DpOptions dp;
  dp.threads = options.threads;
  const auto solved = solve_cliff(instance, dp);
  const int d = instance.decay().shelf_life();
  BoundReport report;
  report.title = "lower bound M/d, " + instance.decay().describe();
  report.facts.emplace_back("M", lower.M.to_string());
  report.facts.emplace_back("OPT", solved.outcome.revenue.to_string());
  report.facts.emplace_back("OPT schedule", solved.prices.to_string());
  for (std::size_t k = 0; k < lower.schedules.size(); ++k)
    report.facts.emplace_back("offset " + std::to_string(k + 1),
                              lower.schedules[k].to_string() + " -> " + lower.revenues[k].to_string());
  const int128 d_best = static_cast<int128>(lower.best.raw()) * d;
  const int128 d_opt = static_cast<int128>(solved.outcome.revenue.raw()) * d;
  report.add("d*best_offset >= M", detail::scaled_product(d_best, Money::decimals), ">=", lower.M.to_string(),
             d_best >= lower.M.raw());
  report.add("d*OPT >= M", detail::scaled_product(d_opt, Money::decimals), ">=", lower.M.to_string(),
             d_opt >= lower.M.raw());
  report.add("OPT <= M", solved.outcome.revenue.to_string(), "<=", lower.M.to_string(), solved.outcome.revenue <= lower.M);
  return report;
}

/// Adversarial family: d * OPT * (a-1) < M * a, per-block optimum b * scale,
/// and OPT confirmed by the oracle when T <= oracle_max_days.
inline BoundReport certify_upper_bound(const AdversarialConfig& config, const CertifyOptions& options = {}) {
  const Instance instance = adversarial_instance(config);
  const std::int64_t b = adversarial_b(config);
  DpOptions dp;
  dp.threads = options.threads;
  const auto solved = solve_cliff(instance, dp);
  const Money opt = solved.outcome.revenue;
  const Money m = compute_M(instance);

  BoundReport report;
  report.title = "adversarial upper bound a=" + std::to_string(config.a) + " d=" + std::to_string(config.d) +
                 " k=" + std::to_string(config.k);
  report.facts.emplace_back("b", std::to_string(b));
  report.facts.emplace_back("T", std::to_string(instance.days()));
  report.facts.emplace_back("N", std::to_string(instance.units()));
  report.facts.emplace_back("M", m.to_string());
  report.facts.emplace_back("OPT", opt.to_string());
  report.facts.emplace_back("OPT schedule", solved.prices.to_string());

  const int128 lhs = static_cast<int128>(opt.raw()) * config.d * (config.a - 1);
  const int128 rhs = static_cast<int128>(m.raw()) * config.a;
  report.add("d*OPT*(a-1) < M*a", detail::scaled_product(lhs, Money::decimals), "<",
             detail::scaled_product(rhs, Money::decimals), lhs < rhs);

  for (int block = 0; block < config.k; ++block) {
    const auto block_opt = solve_cliff(detail::sub_instance(instance, block * config.d, config.d), dp).outcome.revenue;
    const int128 expected = static_cast<int128>(b) * adversarial_block_scale(config, block) * Money::scale;
    report.add("block " + std::to_string(block + 1) + " OPT = b*scale", block_opt.to_string(), "=",
               detail::scaled_product(expected, Money::decimals), static_cast<int128>(block_opt.raw()) == expected);
  }

  if (instance.days() <= options.oracle_max_days) {
    const auto oracle = oracle_optimal(instance, all_candidates(instance), {options.oracle_budget, options.threads});
    report.add("oracle OPT = DP OPT", oracle.outcome.revenue.to_string(), "=", opt.to_string(), oracle.outcome.revenue == opt);
  }
  return report;
}

/// Fractional decay: d * OPT >= (1 - r) * M with OPT from the oracle over
/// the decayed grid. Also reports the observed OPT / M.
inline BoundReport certify_fractional_bounds(const Instance& instance, const CertifyOptions& options = {}) {
  if (instance.decay().kind() != DecayProfile::Kind::fractional)
    throw UnsupportedModel("certify_fractional_bounds needs a fractional decay profile");
  const int d = instance.decay().shelf_life();
  const Fraction r = instance.decay().residual();
  const auto oracle = oracle_optimal(instance, decayed_candidates(instance), {options.oracle_budget, options.threads});
  const Money opt = oracle.outcome.revenue;
  const Money m = compute_M(instance);

  BoundReport report;
  report.title = "fractional lower bound (1-r)M/d, " + instance.decay().describe();
  report.facts.emplace_back("M", m.to_string());
  report.facts.emplace_back("OPT", opt.to_string());
  report.facts.emplace_back("OPT schedule", oracle.prices.to_string());
  report.facts.emplace_back("schedules searched", std::to_string(oracle.schedules));
  if (m > Money{}) {
    // OPT/M to six places, exact truncation.
    const int128 ratio = static_cast<int128>(opt.raw()) * 1'000'000 / m.raw();
    report.facts.emplace_back("OPT/M", detail::format_fixed(ratio, 6, false));
  }
  // d * OPT * 10^6 >= (10^6 - r) * M, all in Money raw units.
  const int128 lhs = static_cast<int128>(opt.raw()) * d * Fraction::denominator;
  const int128 rhs = static_cast<int128>(m.raw()) * (Fraction::denominator - r.raw());
  report.add("d*OPT >= (1-r)*M", detail::scaled_product(lhs, Money::decimals + Fraction::decimals), ">=",
             detail::scaled_product(rhs, Money::decimals + Fraction::decimals), lhs >= rhs);
  return report;
}

}  // namespace shelfprice
