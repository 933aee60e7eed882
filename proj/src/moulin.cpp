#include "costshare/moulin.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>

namespace costshare {

namespace {

void require_shape(const CostShareMethod& method, const CostOracle& oracle, const BidProfile& bids) {
  if (method.universe_size() != oracle.universe_size()) {
    throw InvalidInput("cost-share method and cost function disagree on the universe size");
  }
  if (bids.size() != method.universe_size()) {
    throw InvalidInput("bid profile has " + std::to_string(bids.size()) + " entries; the universe has " +
                       std::to_string(method.universe_size()));
  }
}

std::vector<Money> checked_shares(const CostShareMethod& method, const PlayerSet& s) {
  auto shares = method.shares(s);
  if (shares.size() != method.universe_size()) {
    throw ContractError("cost-share method returned a vector of the wrong length");
  }
  s.for_each([&](PlayerId i) {
    if (shares[i] < -kEps) {
      throw ContractError("negative cost share " + std::to_string(shares[i]) + " for player " +
                          std::to_string(i) + " in " + s.to_string());
    }
  });
  return shares;
}

std::vector<PlayerId> violators(const PlayerSet& s, const std::vector<Money>& shares,
                                const BidProfile& bids) {
  std::vector<PlayerId> out;
  s.for_each([&](PlayerId i) {
    if (shares[i] > bids[i]) out.push_back(i);
  });
  return out;
}

}  // namespace

MechanismOutcome run_moulin(const CostShareMethod& method, const CostOracle& oracle,
                            const BidProfile& bids, const MoulinConfig& config) {
  require_shape(method, oracle, bids);
  const std::size_t n = method.universe_size();
  const std::size_t limit = config.max_iterations.value_or(n + 1);
  if (limit < 1) throw InvalidInput("max_iterations must be at least 1");

  MechanismOutcome out;
  PlayerSet s = PlayerSet::full(n);
  for (std::size_t step = 0;; ++step) {
    if (step >= limit) throw InternalError("Moulin iteration bound exceeded");
    const auto shares = s.empty() ? std::vector<Money>(n, 0.0) : checked_shares(method, s);
    const auto bad = violators(s, shares, bids);
    if (bad.empty()) {
      out.prices.assign(n, 0.0);
      s.for_each([&](PlayerId i) {
        out.prices[i] = shares[i];
        out.trace.push_back({TraceKind::kServed, step, 0.0, i, kNoResource, shares[i], bids[i]});
      });
      break;
    }
    const std::size_t take = config.removal_policy == RemovalPolicy::kBatch ? bad.size() : 1;
    for (std::size_t b = 0; b < take; ++b) {
      const PlayerId i = bad[b];
      out.trace.push_back({TraceKind::kRemoved, step, 0.0, i, kNoResource, shares[i], bids[i]});
      s.erase(i);
    }
  }
  out.served = s;
  out.incurred_cost = oracle.evaluate(s);
  return out;
}

bool removal_order_invariance(const CostShareMethod& method, const CostOracle& oracle,
                              const BidProfile& bids) {
  require_shape(method, oracle, bids);
  const std::size_t n = method.universe_size();
  if (n > 8) throw CapacityError("removal-order search needs at most 8 players");

  std::set<std::uint64_t> visited;
  std::set<std::pair<std::uint64_t, std::vector<Money>>> endings;
  std::vector<std::uint64_t> stack{PlayerSet::full(n).to_mask()};
  while (!stack.empty()) {
    const std::uint64_t mask = stack.back();
    stack.pop_back();
    if (!visited.insert(mask).second) continue;
    const PlayerSet s = PlayerSet::from_mask(n, mask);
    const auto shares = s.empty() ? std::vector<Money>(n, 0.0) : checked_shares(method, s);
    const auto bad = violators(s, shares, bids);
    if (bad.empty()) {
      std::vector<Money> prices(n, 0.0);
      s.for_each([&](PlayerId i) { prices[i] = shares[i]; });
      endings.emplace(mask, std::move(prices));
      continue;
    }
    for (PlayerId i : bad) stack.push_back(mask & ~(std::uint64_t{1} << i));
  }
  return endings.size() == 1;
}

}  // namespace costshare
