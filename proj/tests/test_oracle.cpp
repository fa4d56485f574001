#include <gtest/gtest.h>

#include "shelfprice/oracle.hpp"
#include "support/generators.hpp"
#include "support/reference.hpp"

using namespace shelfprice;

namespace {

Instance late_spike(std::int64_t cost) {
  return Instance(ValuationMatrix::from_days({{Money::units(1)}, {Money::units(1)}, {Money::units(1000)}}, false),
                  DecayProfile::cliff(2), Money::units(cost), BuyerMode::single);
}

}  // namespace

TEST(OracleOptimal, LateSpike) {
  EXPECT_EQ(oracle_optimal(late_spike(0), all_candidates(late_spike(0))).outcome.revenue, Money::units(1002));
  EXPECT_EQ(oracle_optimal(late_spike(2), all_candidates(late_spike(2))).outcome.revenue, Money::units(1001));
}

TEST(OracleOptimal, SingleDayPicksTheBetterPostedPrice) {
  const Instance inst(ValuationMatrix::from_days({{Money::units(7), Money::units(3)}}, true), DecayProfile::cliff(1),
                      Money{}, BuyerMode::multi);
  const auto r = oracle_optimal(inst, all_candidates(inst));
  EXPECT_EQ(r.prices.prices.front(), Money::units(7));
  EXPECT_EQ(r.outcome.revenue, Money::units(7));
}

TEST(OracleOptimal, TiesGoToTheSmallestSchedule) {
  // Selling both units at 5 and one unit at 10 both earn 10.
  const Instance inst(ValuationMatrix::from_days({{Money::units(10), Money::units(5)}}, true), DecayProfile::cliff(1),
                      Money{}, BuyerMode::multi);
  EXPECT_EQ(oracle_optimal(inst, all_candidates(inst)).prices.prices.front(), Money::units(5));
}

TEST(OracleOptimal, BudgetIsEnforcedWithExactCount) {
  const Instance inst = late_spike(2);
  try {
    oracle_optimal(inst, all_candidates(inst), {10, 1});
    FAIL() << "expected BudgetExceeded";
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.required, 3u * 4u * 4u);
    EXPECT_FALSE(e.saturated);
  }
}

TEST(OracleOptimal, GridMustMatchHorizon) {
  EXPECT_THROW(oracle_optimal(late_spike(0), CandidateSet({{Money::units(1)}})), InstanceError);
}

TEST(OraclePareto, LateSpikeContainsTheOptimum) {
  const auto front = oracle_pareto(late_spike(0), all_candidates(late_spike(0)));
  EXPECT_NE(std::find(front.begin(), front.end(), ParetoPoint{Money::units(1002), FineMoney{}}), front.end());
  for (std::size_t k = 1; k < front.size(); ++k) {
    EXPECT_GT(front[k - 1].revenue, front[k].revenue);
    EXPECT_LT(front[k - 1].utility, front[k].utility);
  }
}

TEST(OraclePareto, ProhibitiveGrid) {
  const auto front = oracle_pareto(late_spike(0), prohibitive_grid(late_spike(0)));
  ASSERT_EQ(front.size(), 1u);
  EXPECT_EQ(front.front(), (ParetoPoint{Money{}, FineMoney{}}));
}

TEST(OraclePareto, SingleCandidateGridHasOnePoint) {
  const Instance inst = late_spike(0);
  const CandidateSet grid({{Money::units(1)}, {Money::units(1)}, {Money::units(1)}});
  EXPECT_EQ(oracle_pareto(inst, grid).size(), 1u);
}

TEST(OracleProperty, DominatedPricesDoNotChangeTheResult) {
  testkit::Gen g(71);
  for (int i = 0; i < 100; ++i) {
    const Instance inst = testkit::random_cliff(g);
    const auto grid = all_candidates(inst);
    const auto base = oracle_optimal(inst, grid, {10'000'000, 1});
    const auto padded = oracle_optimal(inst, grid.with_prices({inst.sentinel() + Money::units(5)}), {10'000'000, 1});
    EXPECT_EQ(base.outcome.revenue, padded.outcome.revenue);
    EXPECT_EQ(base.prices, padded.prices);
  }
}

TEST(OracleProperty, ThreadCountDoesNotChangeTheResult) {
  testkit::Gen g(72);
  for (int i = 0; i < 60; ++i) {
    const Instance inst = testkit::random_cliff(g);
    const auto grid = all_candidates(inst);
    const auto one = oracle_optimal(inst, grid, {10'000'000, 1});
    const auto many = oracle_optimal(inst, grid, {10'000'000, 8});
    EXPECT_EQ(one.prices, many.prices);
    EXPECT_EQ(oracle_pareto(inst, grid, {10'000'000, 1}), oracle_pareto(inst, grid, {10'000'000, 8}));
  }
}

// Cross-check the Pareto front against a naive scan of every schedule.
TEST(OracleProperty, ParetoFrontMatchesNaiveFilter) {
  testkit::Gen g(73);
  testkit::Shape shape;
  shape.max_units = 2;
  shape.max_days = 3;
  for (int i = 0; i < 40; ++i) {
    const Instance inst = testkit::random_cliff(g, shape);
    const auto grid = all_candidates(inst);
    std::vector<ParetoPoint> all;
    detail::enumerate_range(grid, 0, grid.schedule_count().value, [&](const PriceSchedule& p) {
      const auto r = testkit::ref_respond(inst, p.prices);
      all.push_back({r.revenue, r.utility});
    });
    std::vector<ParetoPoint> naive;
    for (const auto& p : all) {
      bool dominated = false;
      for (const auto& q : all)
        if (q.revenue >= p.revenue && q.utility >= p.utility && !(q == p)) dominated = true;
      if (!dominated && std::find(naive.begin(), naive.end(), p) == naive.end()) naive.push_back(p);
    }
    std::sort(naive.begin(), naive.end(), [](auto& a, auto& b) { return a.revenue > b.revenue; });
    EXPECT_EQ(oracle_pareto(inst, grid, {10'000'000, 1}), naive);
  }
}
