#include <gtest/gtest.h>

#include <algorithm>

#include "costshare/corpus.hpp"
#include "costshare/steiner.hpp"
#include "oracles.hpp"

using namespace costshare;

namespace {

const SteinerInstance kSingle(Graph{3, {{0, 1, 1.5}, {1, 2, 0.5}}}, 0, {2});
const SteinerInstance kColocated(Graph{2, {{0, 1, 1.7}}}, 0, {1, 1});

Money nearest_other(const SteinerInstance& inst, const PlayerSet& s, PlayerId i) {
  Money best = inst.distance(inst.host(i), inst.root());
  s.for_each([&](PlayerId j) {
    if (j != i) best = std::min(best, inst.distance(inst.host(i), inst.host(j)));
  });
  return best;
}

}  // namespace

TEST(SteinerInstance, RejectsDisconnectedAndUnknownVertices) {
  EXPECT_THROW(SteinerInstance(Graph{3, {{0, 1, 1.0}}}, 0, {1}), InvalidInput);
  EXPECT_THROW(SteinerInstance(Graph{2, {{0, 1, 1.0}}}, 0, {2}), InvalidInput);
  EXPECT_THROW(SteinerInstance(Graph{2, {{0, 1, 1.0}}}, 5, {1}), InvalidInput);
  EXPECT_THROW(SteinerInstance(Graph{2, {{0, 1, -1.0}}}, 0, {1}), InvalidInput);
}

TEST(SteinerOptimalCost, Examples) {
  EXPECT_NEAR(steiner_optimal_cost(kSingle, PlayerSet::full(1)), 2.0, 1e-12);
  EXPECT_NEAR(steiner_optimal_cost(kColocated, PlayerSet::full(2)), 1.7, 1e-12);
  EXPECT_EQ(steiner_optimal_cost(kColocated, PlayerSet(2)), 0.0);
  const SteinerInstance unit(Graph{2, {{0, 1, 1.0}}}, 0, {1, 1, 1, 1});
  EXPECT_NEAR(steiner_optimal_cost(unit, PlayerSet::full(4)), 1.0, 1e-12);
}

TEST(SteinerOptimalCost, StarNeedsSteinerVertex) {
  // Three leaves around a hub at cost 1 each; leaf-to-leaf edges cost 1.9.
  const SteinerInstance star(
      Graph{4, {{0, 3, 1.0}, {1, 3, 1.0}, {2, 3, 1.0}, {0, 1, 1.9}, {1, 2, 1.9}, {0, 2, 1.9}}}, 0, {1, 2});
  EXPECT_NEAR(steiner_optimal_cost(star, PlayerSet::full(2)), 3.0, 1e-12);
}

TEST(SteinerOptimalCost, MatchesMstOverSteinerSubsets) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = random_steiner(seed, 2 + seed % 7, 5);
    for_each_subset(PlayerSet::full(5), [&](const PlayerSet& s) {
      EXPECT_NEAR(steiner_optimal_cost(inst, s), oracle::steiner_cost(inst, s), 1e-9) << "seed " << seed;
    });
  }
}

TEST(SteinerOptimalCost, TerminalCapEnforced) {
  Graph g{14, {}};
  for (VertexId v = 1; v < 14; ++v) g.edges.push_back({0, v, 1.0});
  std::vector<VertexId> hosts;
  for (VertexId v = 1; v < 14; ++v) hosts.push_back(v);
  const SteinerInstance inst(g, 0, hosts);
  EXPECT_THROW(steiner_optimal_cost(inst, PlayerSet::full(13)), CapacityError);
  EXPECT_NO_THROW(steiner_optimal_cost(inst, PlayerSet::of(13, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10})));
}

TEST(JvShares, Examples) {
  EXPECT_NEAR(jv_cost_shares(kSingle, PlayerSet::full(1))[0], 2.0, 1e-12);
  const auto pair = jv_cost_shares(kColocated, PlayerSet::full(2));
  EXPECT_NEAR(pair[0], 0.85, 1e-12);
  EXPECT_NEAR(pair[1], 0.85, 1e-12);
  const SteinerInstance at_root(Graph{2, {{0, 1, 1.0}}}, 0, {0, 1});
  EXPECT_EQ(jv_cost_shares(at_root, PlayerSet::full(2))[0], 0.0);
  EXPECT_THROW(jv_cost_shares(kSingle, PlayerSet(1)), InvalidInput);
}

TEST(JvShares, TwoPlayersOnAPath) {
  // Root - 1 - 2 with unit edges; players at 1 and 2. Moats meet at t = 0.5,
  // then the merged moat (two players) reaches the root at t = 1.
  const SteinerInstance path(Graph{3, {{0, 1, 1.0}, {1, 2, 1.0}}}, 0, {1, 2});
  const auto shares = jv_cost_shares(path, PlayerSet::full(2));
  EXPECT_NEAR(shares[0], 0.75, 1e-12);
  EXPECT_NEAR(shares[1], 0.75, 1e-12);
}

TEST(JvShares, BudgetBalancedWithinTwo) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = random_steiner(seed, 2 + seed % 7, 6);
    const SteinerTreeCost cost(inst);
    for_each_subset(PlayerSet::full(6), [&](const PlayerSet& s) {
      if (s.empty()) return;
      const auto check = budget_balance_ratio(jv_method(inst), cost, s, 2.0);
      EXPECT_TRUE(check.lower_ok && check.upper_ok) << "seed " << seed << " set " << s.to_string();
    });
  }
}

TEST(JvShares, AtLeastHalfTheNearestDistance) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = random_steiner(seed + 1000, 2 + seed % 7, 5);
    for_each_subset(PlayerSet::full(5), [&](const PlayerSet& s) {
      if (s.empty()) return;
      const auto shares = jv_cost_shares(inst, s);
      s.for_each([&](PlayerId i) { EXPECT_GE(shares[i], 0.5 * nearest_other(inst, s, i) - 1e-9); });
    });
  }
}

TEST(JvShares, CrossMonotonicUpToFivePlayers) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = random_steiner(seed, 2 + seed % 7, 5);
    EXPECT_TRUE(check_cross_monotonic(jv_method(inst)).empty()) << "seed " << seed;
  }
}

TEST(JvShares, ColocatedPlayersShareEqually) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto base = random_steiner(seed, 6, 4);
    auto hosts = base.player_hosts();
    hosts[3] = hosts[1];
    const SteinerInstance inst(base.graph(), base.root(), hosts);
    const auto shares = jv_cost_shares(inst, PlayerSet::full(4));
    EXPECT_NEAR(shares[1], shares[3], 1e-12);
  }
}

TEST(JvShares, RelabelingPlayersPermutesShares) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = random_steiner(seed, 7, 4);
    auto hosts = inst.player_hosts();
    std::reverse(hosts.begin(), hosts.end());
    const SteinerInstance flipped(inst.graph(), inst.root(), hosts);
    const auto a = jv_cost_shares(inst, PlayerSet::full(4));
    const auto b = jv_cost_shares(flipped, PlayerSet::full(4));
    for (PlayerId i = 0; i < 4; ++i) EXPECT_NEAR(a[i], b[3 - i], 1e-12);
  }
}

TEST(JvMoats, DualsFeasibleAcrossEveryTerminalPair) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto inst = random_steiner(seed, 2 + seed % 7, 5);
    const auto trace = jv_moat_process(inst, PlayerSet::full(5));
    for (VertexId u : trace.terminals) {
      for (VertexId v : trace.terminals) {
        if (u >= v) continue;
        Money crossing = 0.0;
        for (const Moat& moat : trace.moats) {
          const bool hu = std::count(moat.terminals.begin(), moat.terminals.end(), u) > 0;
          const bool hv = std::count(moat.terminals.begin(), moat.terminals.end(), v) > 0;
          if (hu != hv) crossing += moat.dual;
        }
        EXPECT_LE(crossing, inst.distance(u, v) + 1e-9) << "seed " << seed;
      }
    }
  }
}

TEST(JvMoats, SharesSumToDuals) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = random_steiner(seed, 6, 5);
    const auto trace = jv_moat_process(inst, PlayerSet::full(5));
    Money duals = 0.0;
    for (const Moat& m : trace.moats) duals += m.dual;
    Money shares = 0.0;
    for (Money x : trace.shares) shares += x;
    EXPECT_NEAR(duals, shares, 1e-9);
  }
}
