#include <gtest/gtest.h>

#include "costshare/core.hpp"
#include "costshare/corpus.hpp"
#include "costshare/facility_location.hpp"
#include "oracles.hpp"

using namespace costshare;

namespace {

FacilityLocationCost colocated_pair() { return FacilityLocationCost(FacilityLocationInstance::colocated(2, 1.0)); }

}  // namespace

TEST(PlayerSet, BasicOperations) {
  PlayerSet s = PlayerSet::of(5, {0, 2});
  EXPECT_EQ(s.size(), 2u);
  EXPECT_TRUE(s.contains(2));
  EXPECT_FALSE(s.contains(1));
  EXPECT_EQ(s.to_string(), "{0,2}");
  EXPECT_EQ(s.with(4).to_mask(), 0b10101u);
  EXPECT_EQ(s.without(0).members(), std::vector<PlayerId>{2});
  EXPECT_TRUE(s.is_subset_of(PlayerSet::full(5)));
  EXPECT_THROW(s.insert(5), InvalidInput);
  EXPECT_THROW(PlayerSet::of(3, {0}) | PlayerSet::of(4, {0}), InvalidInput);
}

TEST(PlayerSet, LargeUniverse) {
  PlayerSet s(200);
  s.insert(150).insert(3);
  EXPECT_EQ(s.members(), (std::vector<PlayerId>{3, 150}));
  EXPECT_THROW(s.to_mask(), CapacityError);
}

TEST(PlayerSet, SubsetEnumerationVisitsEverySubset) {
  int count = 0;
  for_each_subset(PlayerSet::of(6, {1, 3, 4}), [&](const PlayerSet&) { ++count; });
  EXPECT_EQ(count, 8);
}

TEST(Profiles, RejectNegativeAndInfiniteValuations) {
  EXPECT_THROW(ValuationProfile({1.0, -0.5}), InvalidInput);
  EXPECT_THROW(ValuationProfile({kInfinity}), InvalidInput);
  EXPECT_NO_THROW(BidProfile({kInfinity, 0.0}));
}

TEST(SocialCost, EmptyServedSetPaysExcludedValuations) {
  const ValuationProfile v({1.2, 0.3});
  EXPECT_NEAR(social_cost(colocated_pair(), v, PlayerSet(2)), 1.5, 1e-12);
}

TEST(SocialCost, ColocatedPair) {
  const ValuationProfile v({1.2, 0.3});
  const auto oracle = colocated_pair();
  EXPECT_NEAR(social_cost(oracle, v, PlayerSet::full(2)), 1.0, 1e-12);
  EXPECT_NEAR(social_cost(oracle, v, PlayerSet::of(2, {0})), 1.3, 1e-12);
  EXPECT_NEAR(social_cost(oracle, v, PlayerSet::full(2), 4.0), 4.0, 1e-12);
}

TEST(SocialCost, UnknownPlayerRejected) {
  const ValuationProfile v({1.2, 0.3});
  EXPECT_THROW(social_cost(colocated_pair(), v, PlayerSet::of(3, {2})), InvalidInput);
}

TEST(SocialWelfare, ColocatedPair) {
  const ValuationProfile v({1.2, 0.3});
  const auto oracle = colocated_pair();
  EXPECT_NEAR(social_welfare(oracle, v, PlayerSet(2)), 0.0, 1e-12);
  EXPECT_NEAR(social_welfare(oracle, v, PlayerSet::full(2)), 0.5, 1e-12);
  EXPECT_NEAR(social_welfare(oracle, v, PlayerSet::of(2, {0})), 0.2, 1e-12);
}

TEST(SocialWelfare, SumsWithSocialCostToTotalValuation) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const FacilityLocationCost oracle(random_facility_location(seed, 4, 2));
    SeededRng rng(seed);
    std::vector<Money> v(4);
    for (auto& x : v) x = rng.uniform(0.0, 2.0);
    const ValuationProfile vals(v);
    for_each_subset(PlayerSet::full(4), [&](const PlayerSet& s) {
      EXPECT_NEAR(social_cost(oracle, vals, s) + social_welfare(oracle, vals, s),
                  vals.sum_over(PlayerSet::full(4)), 1e-9);
    });
  }
}

TEST(OptimalSocialCost, Examples) {
  const auto oracle = colocated_pair();
  auto best = optimal_social_cost(oracle, ValuationProfile({1.2, 0.3}));
  EXPECT_NEAR(best.cost, 1.0, 1e-12);
  EXPECT_EQ(best.witness, PlayerSet::full(2));

  best = optimal_social_cost(oracle, ValuationProfile({0.0, 0.0}));
  EXPECT_EQ(best.cost, 0.0);
  EXPECT_TRUE(best.witness.empty());

  const FacilityLocationCost single(FacilityLocationInstance::colocated(1, 1.0));
  best = optimal_social_cost(single, ValuationProfile({5.0}));
  EXPECT_NEAR(best.cost, 1.0, 1e-12);
  EXPECT_EQ(best.witness, PlayerSet::full(1));
}

TEST(OptimalSocialCost, TiesPreferSmallerSets) {
  // Serving both costs 1, excluding both costs 1.
  const auto best = optimal_social_cost(colocated_pair(), ValuationProfile({0.5, 0.5}));
  EXPECT_NEAR(best.cost, 1.0, 1e-12);
  EXPECT_TRUE(best.witness.empty());
}

TEST(OptimalSocialCost, CapEnforced) {
  const FunctionCostOracle big(17, [](const PlayerSet& s) { return double(s.size()); });
  EXPECT_THROW(optimal_social_cost(big, ValuationProfile::uniform(17, 1.0)), CapacityError);
}

TEST(BudgetBalance, Examples) {
  const auto inst = FacilityLocationInstance::colocated(3, 1.0);
  const auto check = budget_balance_ratio(pt_method(inst), FacilityLocationCost(inst), PlayerSet::full(3), 3.0);
  EXPECT_NEAR(check.sum, 1.0, 1e-12);
  EXPECT_TRUE(check.lower_ok);
  EXPECT_TRUE(check.upper_ok);

  const SteinerInstance path(Graph{2, {{0, 1, 2.0}}}, 0, {1});
  const auto jv = budget_balance_ratio(jv_method(path), SteinerTreeCost(path), PlayerSet::full(1), 2.0);
  EXPECT_NEAR(jv.sum, 2.0, 1e-12);
  EXPECT_TRUE(jv.lower_ok && jv.upper_ok);

  const SteinerInstance at_root(Graph{2, {{0, 1, 2.0}}}, 0, {0});
  const auto zero = budget_balance_ratio(jv_method(at_root), SteinerTreeCost(at_root), PlayerSet::full(1), 2.0);
  EXPECT_EQ(zero.sum, 0.0);
  EXPECT_TRUE(zero.lower_ok && zero.upper_ok);

  EXPECT_THROW(budget_balance_ratio(pt_method(inst), FacilityLocationCost(inst), PlayerSet(3), 3.0), InvalidInput);
}

TEST(Core, PtColocatedIsInCore) {
  const auto inst = FacilityLocationInstance::colocated(3, 1.0);
  EXPECT_TRUE(check_core(pt_method(inst), FacilityLocationCost(inst), PlayerSet::full(3)).empty());
}

TEST(Core, OverchargingMethodIsFlagged) {
  const auto inst = FacilityLocationInstance::colocated(2, 1.0);
  const FacilityLocationCost oracle(inst);
  const FunctionCostShareMethod triple(2, [&](PlayerId, const PlayerSet& s) {
    return 3.0 * oracle.evaluate(s) / double(s.size());
  });
  const auto violations = check_core(triple, oracle, PlayerSet::full(2));
  ASSERT_FALSE(violations.empty());
  EXPECT_EQ(violations.front().coalition, PlayerSet::of(2, {0}));
}

TEST(CrossMonotonic, IncreasingSharesAreAllFlagged) {
  const FunctionCostShareMethod grows(3, [](PlayerId, const PlayerSet& s) { return double(s.size()); });
  // 3 sets of size 1 x 2 extensions x 1 member + 3 sets of size 2 x 1 extension x 2 members.
  EXPECT_EQ(check_cross_monotonic(grows).size(), 12u);
}

TEST(CrossMonotonic, SingleExtensionsAgreeWithFullEnumeration) {
  const FunctionCostShareMethod parity(4, [](PlayerId, const PlayerSet& s) { return s.size() % 2 == 0 ? 1.0 : 0.0; });
  EXPECT_EQ(check_cross_monotonic(parity).empty(), oracle::cross_monotonic_full(parity));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto pt = pt_method(random_facility_location(seed, 5, 2));
    EXPECT_EQ(check_cross_monotonic(pt).empty(), oracle::cross_monotonic_full(pt));
    const auto jv = jv_method(random_steiner(seed, 6, 5));
    EXPECT_EQ(check_cross_monotonic(jv).empty(), oracle::cross_monotonic_full(jv));
  }
}

TEST(CrossMonotonic, CapEnforced) {
  const FunctionCostShareMethod flat(9, [](PlayerId, const PlayerSet&) { return 1.0; });
  EXPECT_THROW(check_cross_monotonic(flat), CapacityError);
}

TEST(Harmonic, Values) {
  EXPECT_EQ(harmonic(1), 1.0);
  EXPECT_EQ(harmonic(2), 1.5);
  EXPECT_NEAR(harmonic(4), 25.0 / 12.0, 1e-15);
  EXPECT_THROW(harmonic(0), InvalidInput);
}

TEST(Oracles, MonotoneAlongRandomChains) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const FacilityLocationCost fl(random_facility_location(seed, 6, 3));
    const SteinerTreeCost st(random_steiner(seed, 7, 6));
    SeededRng rng(seed);
    std::vector<PlayerId> order{0, 1, 2, 3, 4, 5};
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    PlayerSet s(6);
    Money last_fl = 0.0;
    Money last_st = 0.0;
    for (PlayerId i : order) {
      s.insert(i);
      EXPECT_GE(fl.evaluate(s), last_fl - 1e-12);
      EXPECT_GE(st.evaluate(s), last_st - 1e-12);
      last_fl = fl.evaluate(s);
      last_st = st.evaluate(s);
    }
  }
}

TEST(IndividualRationality, DetectsOverchargeAndUnservedPayment) {
  MechanismOutcome out;
  out.served = PlayerSet::of(2, {0});
  out.prices = {0.5, 0.0};
  EXPECT_TRUE(is_individually_rational(out, BidProfile({0.5, 0.0})));
  EXPECT_FALSE(is_individually_rational(out, BidProfile({0.4, 0.0})));
  out.prices = {0.5, 0.1};
  EXPECT_FALSE(is_individually_rational(out, BidProfile({1.0, 1.0})));
}
