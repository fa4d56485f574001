#include <gtest/gtest.h>

#include "shelfprice/buyer.hpp"
#include "shelfprice/io.hpp"
#include "support/generators.hpp"
#include "support/reference.hpp"

using namespace shelfprice;

namespace {

Instance late_spike(std::int64_t cost) {
  return Instance(ValuationMatrix::from_days({{Money::units(1)}, {Money::units(1)}, {Money::units(1000)}}, false),
                  DecayProfile::cliff(2), Money::units(cost), BuyerMode::single);
}

PriceSchedule schedule(std::initializer_list<std::int64_t> whole) {
  PriceSchedule p;
  for (auto w : whole) p.prices.push_back(Money::units(w));
  return p;
}

}  // namespace

TEST(BestResponse, LateSpikeStoresForDayTwoWhenFree) {
  const Instance inst = late_spike(0);
  const auto prices = schedule({1, 1000, 1000});
  const PurchasePlan plan = best_response(inst, prices);
  EXPECT_EQ(plan.purchase_day(0, 0), 0);
  EXPECT_EQ(plan.purchase_day(0, 1), 0);
  EXPECT_EQ(plan.purchase_day(0, 2), 2);
  EXPECT_EQ(plan.quantities(), (std::vector<int>{2, 0, 1}));
  EXPECT_EQ(evaluate_outcome(inst, prices, plan).revenue, Money::units(1002));
}

TEST(BestResponse, LateSpikeSkipsDayTwoWhenStorageCostsTwo) {
  const Instance inst = late_spike(2);
  const PurchasePlan plan = best_response(inst, schedule({1, 1000, 1000}));
  EXPECT_FALSE(plan.purchase_day(0, 1).has_value());
  EXPECT_EQ(plan.quantities(), (std::vector<int>{1, 0, 1}));
}

TEST(BestResponse, ProhibitivePricesGiveEmptyPlan) {
  const Instance inst = late_spike(0);
  EXPECT_TRUE(best_response(inst, schedule({1001, 1001, 1001})).empty());
}

TEST(BestResponse, TiesGoToLeastStorage) {
  const Instance inst(ValuationMatrix::from_days({{Money::units(5)}, {Money::units(5)}}, false), DecayProfile::cliff(2),
                      Money{}, BuyerMode::single);
  const PurchasePlan plan = best_response(inst, schedule({3, 3}));
  EXPECT_EQ(plan.purchase_day(0, 0), 0);
  EXPECT_EQ(plan.purchase_day(0, 1), 1);
}

TEST(BestResponse, BuysAtZeroUtility) {
  const Instance inst(ValuationMatrix::from_days({{Money::units(4)}}, false), DecayProfile::cliff(1), Money{},
                      BuyerMode::single);
  EXPECT_EQ(best_response(inst, schedule({4})).purchase_day(0, 0), 0);
}

TEST(BestResponse, FractionalWindowCoversWholeHorizon) {
  // Day-3 unit worth 10 fresh, 5 after spoiling; buying on day 1 at 1 gives 4.
  const Instance inst(ValuationMatrix::from_days({{Money{}}, {Money{}}, {Money::units(10)}}, false),
                      DecayProfile::fractional(1, Fraction::parse("0.5")), Money{}, BuyerMode::single);
  const auto choice = best_purchase(inst, schedule({1, 9, 7}), 0, 2);
  ASSERT_TRUE(choice.has_value());
  EXPECT_EQ(choice->purchase_day, 0);
  EXPECT_EQ(choice->utility, widen(Money::units(4)));
}

TEST(VerifyNoDeviation, LateSpike) {
  const Instance inst = late_spike(0);
  const auto prices = schedule({1, 1000, 1000});
  EXPECT_TRUE(verify_no_deviation(inst, prices, best_response(inst, prices)));
  PurchasePlan worse(1, 3);
  worse.assign(0, 0, 0);
  worse.assign(0, 1, 1);
  worse.assign(0, 2, 2);
  EXPECT_FALSE(verify_no_deviation(inst, prices, worse));
}

TEST(VerifyNoDeviation, EmptyPlanUnderProhibitivePrices) {
  const Instance inst = late_spike(0);
  EXPECT_TRUE(verify_no_deviation(inst, schedule({5000, 5000, 5000}), PurchasePlan(1, 3)));
}

TEST(VerifyNoDeviation, FlagsLongerStorageOnTies) {
  const Instance inst(ValuationMatrix::from_days({{Money::units(5)}, {Money::units(5)}}, false), DecayProfile::cliff(2),
                      Money{}, BuyerMode::single);
  PurchasePlan stored(1, 2);
  stored.assign(0, 0, 0);
  stored.assign(0, 1, 0);
  EXPECT_FALSE(verify_no_deviation(inst, schedule({3, 3}), stored));
}

namespace {

PriceSchedule random_prices(testkit::Gen& g, const Instance& inst, int top) {
  PriceSchedule p;
  for (int t = 0; t < inst.days(); ++t) p.prices.push_back(Money::units(g.between(0, top)));
  return p;
}

Instance random_any(testkit::Gen& g) {
  Instance base = testkit::random_cliff(g);
  switch (g.between(0, 2)) {
    case 0: return base;
    case 1: return base.with_decay(DecayProfile::fractional(static_cast<int>(g.between(1, base.days())),
                                                            Fraction::from_raw(g.between(0, 4) * 200'000 % 1'000'000)));
    default: return base.with_decay(testkit::random_step(g, base.days()));
  }
}

}  // namespace

TEST(BuyerProperty, MatchesNaiveSlotSearch) {
  testkit::Gen g(31);
  for (int i = 0; i < 500; ++i) {
    const Instance inst = random_any(g);
    const auto prices = random_prices(g, inst, 12);
    const auto ref = testkit::ref_respond(inst, prices.prices);
    const Outcome out = respond_and_evaluate(inst, prices);
    EXPECT_EQ(out.revenue, ref.revenue);
    EXPECT_EQ(out.buyer_utility, ref.utility);
    const auto summary = response_summary(inst, prices);
    EXPECT_EQ(summary.revenue, ref.revenue);
    EXPECT_EQ(summary.buyer_utility, ref.utility);
  }
}

TEST(BuyerProperty, OutputPassesDeviationCheck) {
  testkit::Gen g(32);
  for (int i = 0; i < 500; ++i) {
    const Instance inst = random_any(g);
    const auto prices = random_prices(g, inst, 12);
    EXPECT_TRUE(verify_no_deviation(inst, prices, best_response(inst, prices)));
  }
}

TEST(BuyerProperty, RaisingAPriceNeverHelpsTheBuyer) {
  testkit::Gen g(33);
  for (int i = 0; i < 500; ++i) {
    const Instance inst = random_any(g);
    auto prices = random_prices(g, inst, 12);
    const FineMoney before = response_summary(inst, prices).buyer_utility;
    prices.prices[static_cast<std::size_t>(g.between(0, inst.days() - 1))] += Money::units(g.between(1, 5));
    EXPECT_LE(response_summary(inst, prices).buyer_utility, before);
  }
}

// Higher-valued slots of a day are served at least as fresh (most recent
// purchases are consumed first) and buy whenever a lower-valued slot does.
TEST(BuyerProperty, HigherValuedSlotsGetFresherGoods) {
  testkit::Gen g(34);
  for (int i = 0; i < 500; ++i) {
    const Instance inst = random_any(g);
    const auto prices = random_prices(g, inst, 12);
    const PurchasePlan plan = best_response(inst, prices);
    for (int t = 0; t < inst.days(); ++t)
      for (int a = 0; a + 1 < inst.units(); ++a) {
        const auto hi = plan.purchase_day(a, t), lo = plan.purchase_day(a + 1, t);
        if (lo) {
          ASSERT_TRUE(hi.has_value());
          EXPECT_GE(*hi, *lo);
          EXPECT_GE(inst.value(a, t), inst.value(a + 1, t));
        }
      }
  }
}

// Step profiles: the best joint plan over all slot-to-day assignments has
// the same total utility as the slot-by-slot response.
TEST(BuyerProperty, StepProfilesMatchJointPlanSearch) {
  testkit::Gen g(35);
  for (int i = 0; i < 150; ++i) {
    testkit::Shape shape;
    shape.max_units = 2;
    shape.max_days = 3;
    const Instance base = testkit::random_cliff(g, shape);
    const Instance inst = base.with_decay(testkit::random_step(g, base.days()));
    const auto prices = random_prices(g, inst, 12);
    const int slots = inst.units() * inst.days();
    // Option 0 = no purchase, k > 0 = purchase day t - (k - 1).
    std::vector<int> option(static_cast<std::size_t>(slots), 0);
    std::optional<FineMoney> best;
    while (true) {
      FineMoney total;
      bool valid = true;
      for (int k = 0; k < slots && valid; ++k) {
        const int t = k / inst.units(), u = k % inst.units(), o = option[static_cast<std::size_t>(k)];
        if (o == 0) continue;
        const int s = t - (o - 1);
        if (s < 0) {
          valid = false;
          break;
        }
        total += inst.effective_value(u, t, t - s + 1) - widen(prices[s] + inst.storage_cost() * (t - s));
      }
      if (valid && (!best || total > *best)) best = total;
      int k = 0;
      for (; k < slots; ++k) {
        if (++option[static_cast<std::size_t>(k)] <= inst.days()) break;
        option[static_cast<std::size_t>(k)] = 0;
      }
      if (k == slots) break;
    }
    EXPECT_EQ(response_summary(inst, prices).buyer_utility, *best);
  }
}
