#include <gtest/gtest.h>

#include "costshare/corpus.hpp"
#include "costshare/set_cover.hpp"
#include "oracles.hpp"

using namespace costshare;

namespace {

const SetCoverInstance kAb(2, {{1.0, {0}}, {1.0, {1}}, {1.5, {0, 1}}});

}  // namespace

TEST(SetCoverInstance, Validation) {
  EXPECT_THROW(SetCoverInstance(2, {{1.0, {0}}}), InfeasibleError);
  EXPECT_THROW(SetCoverInstance(2, {{1.0, {0, 2}}, {1.0, {1}}}), InvalidInput);
  EXPECT_THROW(SetCoverInstance(2, {{1.0, {0, 0, 1}}}), InvalidInput);
  EXPECT_THROW(SetCoverInstance(1, {{-1.0, {0}}}), InvalidInput);
  const SetCoverInstance unsorted(2, {{1.0, {1, 0}}});
  EXPECT_EQ(unsorted.sets()[0].members, (std::vector<PlayerId>{0, 1}));
}

TEST(ScOptimalCost, Examples) {
  EXPECT_EQ(sc_optimal_cost(kAb, PlayerSet(2)).cost, 0.0);
  EXPECT_TRUE(sc_optimal_cost(kAb, PlayerSet(2)).sets.empty());
  auto sol = sc_optimal_cost(kAb, PlayerSet::full(2));
  EXPECT_NEAR(sol.cost, 1.5, 1e-12);
  EXPECT_EQ(sol.sets, std::vector<std::size_t>{2});
  sol = sc_optimal_cost(kAb, PlayerSet::of(2, {0}));
  EXPECT_NEAR(sol.cost, 1.0, 1e-12);
  EXPECT_EQ(sol.sets, std::vector<std::size_t>{0});
}

TEST(ScOptimalCost, MatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = random_set_cover(seed, 5, 2 + seed % 6);
    for_each_subset(PlayerSet::full(5), [&](const PlayerSet& s) {
      EXPECT_NEAR(sc_optimal_cost(inst, s).cost, oracle::set_cover_cost(inst, s), 1e-9);
    });
  }
}

TEST(ScOptimalCost, CapEnforced) {
  const auto inst = random_set_cover(1, 3, 17);
  EXPECT_THROW(sc_optimal_cost(inst, PlayerSet::full(3)), CapacityError);
}

TEST(DmvSetCover, SingleElement) {
  const SetCoverInstance one(1, {{1.0, {0}}});
  const auto out = run_dmv_setcover(one, BidProfile({1.0}));
  EXPECT_EQ(out.served, PlayerSet::full(1));
  EXPECT_NEAR(out.prices[0], 1.0, 1e-12);
  EXPECT_NEAR(out.incurred_cost, 1.0, 1e-12);
}

TEST(DmvSetCover, BothAccept) {
  const auto out = run_dmv_setcover(kAb, BidProfile({0.6, 0.6}));
  EXPECT_EQ(out.served, PlayerSet::full(2));
  EXPECT_NEAR(out.prices[0], 0.5, 1e-12);
  EXPECT_NEAR(out.prices[1], 0.5, 1e-12);
  EXPECT_NEAR(out.incurred_cost, 1.5, 1e-12);
  EXPECT_NEAR(out.revenue(), out.incurred_cost / harmonic(2), 1e-12);
  EXPECT_TRUE(dmv_sc_shares_in_core(kAb, out).empty());
}

TEST(DmvSetCover, RefusalCascades) {
  const auto out = run_dmv_setcover(kAb, BidProfile({0.6, 0.3}));
  EXPECT_TRUE(out.served.empty());
  EXPECT_EQ(out.incurred_cost, 0.0);
  std::vector<PlayerId> deleted;
  for (const auto& e : out.trace) {
    if (e.kind == TraceKind::kDeleted) {
      deleted.push_back(e.player);
      EXPECT_GT(e.amount, e.bid);
    }
  }
  EXPECT_EQ(deleted, (std::vector<PlayerId>{1, 0}));
  EXPECT_TRUE(dmv_sc_shares_in_core(kAb, out).empty());
}

TEST(DmvSetCover, EqualBidAccepts) {
  const auto out = run_dmv_setcover(kAb, BidProfile({0.5, 0.5}));
  EXPECT_EQ(out.served, PlayerSet::full(2));
}

TEST(DmvSetCover, DoubledPricesLeaveTheCore) {
  auto out = run_dmv_setcover(kAb, BidProfile({0.6, 0.6}));
  for (auto& p : out.prices) p *= 4.0;
  EXPECT_FALSE(dmv_sc_shares_in_core(kAb, out).empty());
}

TEST(DmvSetCover, TruthfulBudgetBalanceAndCore) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto inst = random_set_cover(seed, 4, 2 + seed % 4);
    const SetCoverCost cost(inst);
    SeededRng rng(seed);
    std::vector<Money> v(4);
    for (auto& x : v) x = rng.uniform(0.0, 2.0);
    const auto out = run_dmv_setcover(inst, BidProfile(v));
    EXPECT_TRUE(is_individually_rational(out, BidProfile(v)));
    EXPECT_GE(out.revenue(), out.incurred_cost / harmonic(4) - 1e-9);
    EXPECT_LE(out.revenue(), cost.evaluate(out.served) + 1e-9);
    EXPECT_TRUE(dmv_sc_shares_in_core(inst, out).empty());
  }
}

TEST(DmvSetCover, OffersNeverDecrease) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = random_set_cover(seed, 5, 4);
    SeededRng rng(seed + 5);
    std::vector<Money> v(5);
    for (auto& x : v) x = rng.uniform(0.0, 1.5);
    Money last = 0.0;
    for (const auto& e : run_dmv_setcover(inst, BidProfile(v)).trace) {
      if (e.kind == TraceKind::kSetBought) continue;
      EXPECT_GE(e.amount, last - 1e-12);
      last = e.amount;
    }
  }
}
