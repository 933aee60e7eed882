#include <gtest/gtest.h>

#include "costshare/corpus.hpp"
#include "costshare/dmv_facility_location.hpp"
#include "costshare/facility_location.hpp"
#include "costshare/incentives.hpp"
#include "costshare/moulin.hpp"
#include "costshare/set_cover.hpp"
#include "costshare/steiner.hpp"

using namespace costshare;

namespace {

MechanismRunner moulin_pt(const FacilityLocationInstance& inst) {
  return [inst](const BidProfile& b) {
    return run_moulin(pt_method(inst), FacilityLocationCost(inst), b);
  };
}

MechanismRunner moulin_jv(const SteinerInstance& inst) {
  return [inst](const BidProfile& b) {
    return run_moulin(jv_method(inst), SteinerTreeCost(inst), b);
  };
}

// Serves everyone and charges the bid.
MechanismOutcome pay_your_bid(const BidProfile& b) {
  MechanismOutcome out;
  out.served = PlayerSet::full(b.size());
  out.prices = b.values();
  return out;
}

ValuationProfile valuations_for(std::uint64_t seed, std::size_t n) {
  SeededRng rng(seed * 7919 + 3);
  std::vector<Money> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(rng.uniform(0.1, 2.5));
  return ValuationProfile(v);
}

}  // namespace

TEST(BidGrid, NinePointsOfMultiples) {
  const auto g = bid_grid(2.0);
  ASSERT_EQ(g.size(), 9u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g[1], 0.5);
  EXPECT_EQ(g.back(), 4.0);
  EXPECT_EQ(bid_grid(0.0).size(), 1u);
  BidGridOptions o;
  o.offsets = {-0.01, 0.01, -5.0};
  EXPECT_EQ(bid_grid(1.0, o).size(), 11u);
  o.step = 0.0;
  EXPECT_THROW(bid_grid(1.0, o), InvalidInput);
}

TEST(Utilities, ServedAndUnserved) {
  MechanismOutcome out;
  out.served = PlayerSet::of(2, {0});
  out.prices = {0.4, 0.0};
  const auto u = utilities(out, ValuationProfile({1.0, 3.0}));
  EXPECT_DOUBLE_EQ(u[0], 0.6);
  EXPECT_DOUBLE_EQ(u[1], 0.0);
}

TEST(CheckStrategyproof, MoulinPtHasNoViolations) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto inst = random_facility_location(seed, 3, 2);
    const auto v = valuations_for(seed, 3);
    EXPECT_TRUE(check_strategyproof(moulin_pt(inst), v, bid_grids(v)).empty()) << seed;
  }
}

TEST(CheckStrategyproof, PayYourBidIsFlagged) {
  const ValuationProfile v({1.0, 1.0, 1.0});
  const auto violations = check_strategyproof(pay_your_bid, v, bid_grids(v));
  EXPECT_FALSE(violations.empty());
  for (const auto& x : violations) {
    ASSERT_EQ(x.coalition.size(), 1u);
    const PlayerId i = x.coalition[0];
    EXPECT_GT(x.deviation_utility[i], x.truthful_utility[i]);
  }
}

TEST(CheckStrategyproof, CapacityAndShapeErrors) {
  const ValuationProfile five({1, 1, 1, 1, 1});
  EXPECT_THROW(check_strategyproof(pay_your_bid, five, bid_grids(five)), CapacityError);
  const ValuationProfile two({1, 1});
  EXPECT_THROW(check_strategyproof(pay_your_bid, two, {{0.0}}), InvalidInput);
}

TEST(CheckGsp, MaxCoalitionOneEqualsStrategyproof) {
  const ValuationProfile v({1.0, 0.5, 2.0});
  GspOptions o;
  o.max_coalition = 1;
  const auto a = check_strategyproof(pay_your_bid, v, bid_grids(v));
  const auto b = check_gsp(pay_your_bid, v, bid_grids(v), o);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].coalition, b[i].coalition);
    EXPECT_EQ(a[i].bids, b[i].bids);
  }
}

TEST(CheckGsp, MoulinMechanismsAreGroupStrategyproof) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto v = valuations_for(seed, 3);
    const auto fl = random_facility_location(seed, 3, 2);
    EXPECT_TRUE(check_gsp(moulin_pt(fl), v, bid_grids(v)).empty()) << seed;
    const auto st = random_steiner(seed, 5, 3);
    EXPECT_TRUE(check_gsp(moulin_jv(st), v, bid_grids(v)).empty()) << seed;
  }
}

TEST(CheckGsp, WorkersDoNotChangeViolations) {
  const ValuationProfile v({1.0, 0.5, 2.0});
  GspOptions one;
  GspOptions four;
  four.workers = 4;
  const auto a = check_gsp(pay_your_bid, v, bid_grids(v), one);
  const auto b = check_gsp(pay_your_bid, v, bid_grids(v), four);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].bids, b[i].bids);
}

TEST(CheckGsp, CoalitionLargerThanUniverseRejected) {
  const ValuationProfile v({1.0, 1.0});
  GspOptions o;
  o.max_coalition = 3;
  EXPECT_THROW(check_gsp(pay_your_bid, v, bid_grids(v), o), InvalidInput);
}

TEST(CheckGsp, WeakPredicateHoldsForDmvMechanisms) {
  GspOptions weak;
  weak.predicate = GspPredicate::kWeak;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto v = valuations_for(seed, 3);
    const auto sc = random_set_cover(seed, 3, 3);
    const MechanismRunner dmv_sc = [sc](const BidProfile& b) { return run_dmv_setcover(sc, b); };
    EXPECT_TRUE(check_strategyproof(dmv_sc, v, bid_grids(v)).empty()) << seed;
    EXPECT_TRUE(check_gsp(dmv_sc, v, bid_grids(v), weak).empty()) << seed;
    const auto fl = random_facility_location(seed, 3, 2);
    const MechanismRunner dmv_fl = [fl](const BidProfile& b) { return run_dmv_fl(fl, b); };
    EXPECT_TRUE(check_strategyproof(dmv_fl, v, bid_grids(v)).empty()) << seed;
    EXPECT_TRUE(check_gsp(dmv_fl, v, bid_grids(v), weak).empty()) << seed;
  }
}
