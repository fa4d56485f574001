#include <gtest/gtest.h>

#include "shelfprice/io.hpp"
#include "shelfprice/model.hpp"
#include "support/generators.hpp"

using namespace shelfprice;

namespace {

const char* kLateSpike = R"({"N":1,"T":3,"storage_cost":"0","mode":"single",
  "decay":{"kind":"cliff","d":2},"values":[["1"],["1"],["1000"]]})";

Instance late_spike(const char* cost = "0") { return load_instance(kLateSpike).with_storage_cost(Money::parse(cost)); }

PurchasePlan late_spike_plan(bool buy_day2) {
  PurchasePlan plan(1, 3);
  plan.assign(0, 0, 0);
  if (buy_day2) plan.assign(0, 1, 0);
  plan.assign(0, 2, 2);
  return plan;
}

}  // namespace

TEST(LoadInstance, LateSpikeDocument) {
  const Instance inst = load_instance(kLateSpike);
  EXPECT_EQ(inst.units(), 1);
  EXPECT_EQ(inst.days(), 3);
  EXPECT_EQ(inst.value(0, 2), Money::units(1000));
  EXPECT_TRUE(inst.decay().is_cliff());
  EXPECT_EQ(inst.decay().shelf_life(), 2);
  EXPECT_EQ(inst.mode(), BuyerMode::single);
  EXPECT_EQ(inst.sentinel(), Money::units(4001));
}

TEST(LoadInstance, SingleDay) {
  const Instance inst = load_instance(R"({"N":1,"T":1,"decay":{"kind":"cliff","d":1},"values":[["7.5"]]})");
  EXPECT_EQ(inst.days(), 1);
  EXPECT_EQ(inst.value(0, 0), Money::parse("7.5"));
}

TEST(LoadInstance, MultiBuyerDaysAreSortedDescending) {
  const Instance inst = load_instance(
      R"({"N":3,"T":1,"mode":"multi","decay":{"kind":"cliff","d":1},"values":[["2","5","3"]]})");
  EXPECT_EQ(inst.value(0, 0), Money::units(5));
  EXPECT_EQ(inst.value(1, 0), Money::units(3));
  EXPECT_EQ(inst.value(2, 0), Money::units(2));
}

TEST(LoadInstance, SingleBuyerRejectsIncreasingMarginalValues) {
  EXPECT_THROW(load_instance(R"({"N":2,"T":1,"mode":"single","decay":{"kind":"cliff","d":1},"values":[["2","5"]]})"),
               InstanceError);
}

TEST(LoadInstance, RejectsBadDocuments) {
  EXPECT_THROW(load_instance("{not json"), InstanceError);
  EXPECT_THROW(load_instance(R"({"N":1,"T":1,"storage_cost":"-1","decay":{"kind":"cliff","d":1},"values":[["1"]]})"),
               InstanceError);
  EXPECT_THROW(load_instance(R"({"N":0,"T":1,"decay":{"kind":"cliff","d":1},"values":[[]]})"), InstanceError);
  EXPECT_THROW(load_instance(R"({"N":1,"T":0,"decay":{"kind":"cliff","d":1},"values":[]})"), InstanceError);
  EXPECT_THROW(load_instance(R"({"N":1,"T":2,"decay":{"kind":"step","r":["1","0.5","0.7"]},"values":[["1"],["1"]]})"),
               InstanceError);
  EXPECT_THROW(load_instance(R"({"N":1,"T":2,"decay":{"kind":"step","r":["0.9","0.5"]},"values":[["1"],["1"]]})"),
               InstanceError);
  EXPECT_THROW(load_instance(R"({"N":1,"T":1,"decay":{"kind":"cliff","d":1},"values":[[1.5]]})"), InstanceError);
  EXPECT_THROW(load_instance(R"({"N":1,"T":1,"decay":{"kind":"cliff","d":1},"values":[["-1"]]})"), InstanceError);
  EXPECT_THROW(load_instance(R"({"N":1,"T":1,"decay":{"kind":"fractional","d":1,"r":"1"},"values":[["1"]]})"),
               InstanceError);
  EXPECT_THROW(load_instance(R"({"N":2,"T":1,"decay":{"kind":"cliff","d":1},"values":[["1"]]})"), InstanceError);
}

TEST(LoadInstance, ShelfLifeBeyondHorizonIsClamped) {
  const Instance inst = load_instance(R"({"N":1,"T":2,"decay":{"kind":"cliff","d":9},"values":[["1"],["2"]]})");
  EXPECT_EQ(inst.decay().shelf_life(), 2);
}

TEST(Decay, Profiles) {
  const auto cliff = DecayProfile::cliff(2);
  EXPECT_TRUE(cliff.at(1).is_one());
  EXPECT_TRUE(cliff.at(2).is_one());
  EXPECT_TRUE(cliff.at(3).is_zero());
  EXPECT_EQ(cliff.span(5), 2);
  const auto frac = DecayProfile::fractional(2, Fraction::parse("0.25"));
  EXPECT_EQ(frac.at(3), Fraction::parse("0.25"));
  EXPECT_EQ(frac.span(5), 5);
  const auto step = DecayProfile::step({Fraction::one(), Fraction::parse("0.5"), Fraction::zero()});
  EXPECT_EQ(step.at(2), Fraction::parse("0.5"));
  EXPECT_EQ(step.span(3), 2);
  EXPECT_EQ(step.positive_levels(3).size(), 2u);
}

TEST(EvaluateOutcome, LateSpikePlanAtZeroCost) {
  const Instance inst = late_spike();
  const Outcome out = evaluate_outcome(inst, {{Money::units(1), Money::units(1000), Money::units(1000)}}, late_spike_plan(true));
  EXPECT_EQ(out.revenue, Money::units(1002));
  EXPECT_EQ(out.buyer_utility, FineMoney{});
  EXPECT_EQ(out.quantities, (std::vector<int>{2, 0, 1}));
}

TEST(EvaluateOutcome, LateSpikePlanAtCostTwo) {
  const Instance inst = late_spike("2");
  const Outcome out = evaluate_outcome(inst, {{Money::units(1), Money::units(1000), Money::units(1000)}}, late_spike_plan(false));
  EXPECT_EQ(out.revenue, Money::units(1001));
  EXPECT_EQ(out.quantities, (std::vector<int>{1, 0, 1}));
}

TEST(EvaluateOutcome, EmptyPlan) {
  const Instance inst = late_spike();
  const Outcome out = evaluate_outcome(inst, {{Money::units(5), Money::units(5), Money::units(5)}}, PurchasePlan(1, 3));
  EXPECT_EQ(out.revenue, Money{});
  EXPECT_EQ(out.buyer_utility, FineMoney{});
}

TEST(ValidatePlan, RejectsSpoiledAndFuturePurchases) {
  const Instance inst = late_spike();
  PurchasePlan spoiled(1, 3);
  spoiled.assign(0, 2, 0);  // stored two days under d = 2
  EXPECT_THROW(validate_plan(inst, spoiled), InstanceError);
  PurchasePlan future(1, 3);
  future.assign(0, 0, 1);
  EXPECT_THROW(validate_plan(inst, future), InstanceError);
  PurchasePlan outside(1, 3);
  outside.assign(0, 1, 5);
  EXPECT_THROW(validate_plan(inst, outside), InstanceError);
}

TEST(CheckSchedule, RejectsNegativeAndShortSchedules) {
  const Instance inst = late_spike();
  EXPECT_THROW(check_schedule(inst, {{Money::units(1), Money::units(1)}}), InstanceError);
  EXPECT_THROW(check_schedule(inst, {{Money::units(1), Money::units(-1), Money::units(1)}}), InstanceError);
}

TEST(SerializationProperty, SaveLoadRoundTrip) {
  testkit::Gen g(21);
  for (int i = 0; i < 300; ++i) {
    std::vector<std::vector<Money>> rows(static_cast<std::size_t>(g.between(1, 6)));
    const int units = static_cast<int>(g.between(1, 4));
    for (auto& row : rows)
      for (int u = 0; u < units; ++u) row.push_back(Money::from_raw(g.between(0, 50'000'000)));
    const int days = static_cast<int>(rows.size());
    DecayProfile decay = DecayProfile::cliff(static_cast<int>(g.between(1, days)));
    if (g.coin()) decay = DecayProfile::fractional(static_cast<int>(g.between(1, days)), Fraction::from_raw(g.between(0, 999'999)));
    else if (g.coin()) decay = testkit::random_step(g, days);
    const Instance inst(ValuationMatrix::from_days(rows, true), decay, Money::from_raw(g.between(0, 5000)),
                        g.coin() ? BuyerMode::multi : BuyerMode::single);
    EXPECT_EQ(load_instance(save_instance(inst)), inst);
  }
}

TEST(EvaluateOutcomeProperty, IsPure) {
  testkit::Gen g(22);
  for (int i = 0; i < 100; ++i) {
    const Instance inst = testkit::random_cliff(g);
    PurchasePlan plan(inst.units(), inst.days());
    PriceSchedule prices;
    for (int t = 0; t < inst.days(); ++t) {
      prices.prices.push_back(Money::units(g.between(0, 10)));
      for (int u = 0; u < inst.units(); ++u)
        if (g.coin()) plan.assign(u, t, std::max(0, t - static_cast<int>(g.between(0, inst.decay().shelf_life() - 1))));
    }
    const Outcome a = evaluate_outcome(inst, prices, plan), b = evaluate_outcome(inst, prices, plan);
    EXPECT_EQ(a.revenue, b.revenue);
    EXPECT_EQ(a.buyer_utility, b.buyer_utility);
    EXPECT_EQ(a.quantities, b.quantities);
  }
}
