#include "costshare/incentives.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <future>
#include <string>

namespace costshare {

std::vector<Money> utilities(const MechanismOutcome& outcome, const ValuationProfile& valuations) {
  std::vector<Money> u(valuations.size(), 0.0);
  for (PlayerId i = 0; i < valuations.size(); ++i) {
    u[i] = (outcome.served.contains(i) ? valuations[i] : 0.0) - outcome.prices[i];
  }
  return u;
}

std::vector<Money> bid_grid(Money valuation, const BidGridOptions& options) {
  if (!(options.step > 0.0)) throw InvalidInput("bid grid step must be positive");
  std::vector<Money> grid;
  const auto points = static_cast<std::size_t>(std::floor(options.max_multiple / options.step + 1e-9));
  for (std::size_t s = 0; s <= points; ++s) grid.push_back(valuation * options.step * static_cast<double>(s));
  for (Money offset : options.offsets) {
    if (valuation + offset >= 0.0) grid.push_back(valuation + offset);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

std::vector<std::vector<Money>> bid_grids(const ValuationProfile& valuations,
                                          const BidGridOptions& options) {
  std::vector<std::vector<Money>> out;
  for (Money v : valuations.values()) out.push_back(bid_grid(v, options));
  return out;
}

namespace {

void require_grids(const ValuationProfile& valuations, const std::vector<std::vector<Money>>& grids,
                   const Caps& caps) {
  if (valuations.size() > caps.incentive_players) {
    throw CapacityError("incentive checks over " + std::to_string(valuations.size()) +
                        " players exceed the cap of " + std::to_string(caps.incentive_players));
  }
  if (grids.size() != valuations.size()) throw InvalidInput("one bid grid per player is required");
}

bool violates(const std::vector<PlayerId>& coalition, const std::vector<Money>& truthful,
              const std::vector<Money>& deviated, GspPredicate predicate) {
  bool any_gain = false;
  bool all_gain = true;
  bool any_loss = false;
  for (PlayerId i : coalition) {
    const bool gain = deviated[i] > truthful[i] + kEps;
    any_gain = any_gain || gain;
    all_gain = all_gain && gain;
    any_loss = any_loss || deviated[i] < truthful[i] - kEps;
  }
  return predicate == GspPredicate::kFull ? any_gain && !any_loss : all_gain;
}

std::vector<IncentiveViolation> scan_coalition(const MechanismRunner& mechanism,
                                               const ValuationProfile& valuations,
                                               const std::vector<std::vector<Money>>& grids,
                                               const std::vector<PlayerId>& coalition,
                                               const std::vector<Money>& truthful,
                                               GspPredicate predicate) {
  std::vector<IncentiveViolation> out;
  std::vector<std::size_t> digit(coalition.size(), 0);
  while (true) {
    std::vector<Money> bids = valuations.values();
    for (std::size_t c = 0; c < coalition.size(); ++c) bids[coalition[c]] = grids[coalition[c]][digit[c]];
    if (bids != valuations.values()) {
      BidProfile profile(bids);
      const auto deviated = utilities(mechanism(profile), valuations);
      if (violates(coalition, truthful, deviated, predicate)) {
        out.push_back({coalition, std::move(profile), truthful, deviated});
      }
    }
    std::size_t c = 0;
    for (; c < coalition.size(); ++c) {
      if (++digit[c] < grids[coalition[c]].size()) break;
      digit[c] = 0;
    }
    if (c == coalition.size()) break;
  }
  return out;
}

}  // namespace

std::vector<IncentiveViolation> check_strategyproof(const MechanismRunner& mechanism,
                                                    const ValuationProfile& valuations,
                                                    const std::vector<std::vector<Money>>& grids,
                                                    const Caps& caps) {
  GspOptions options;
  options.max_coalition = 1;
  options.caps = caps;
  return check_gsp(mechanism, valuations, grids, options);
}

std::vector<IncentiveViolation> check_gsp(const MechanismRunner& mechanism,
                                          const ValuationProfile& valuations,
                                          const std::vector<std::vector<Money>>& grids,
                                          const GspOptions& options) {
  require_grids(valuations, grids, options.caps);
  const std::size_t n = valuations.size();
  if (options.max_coalition > n) throw InvalidInput("max_coalition exceeds the number of players");
  for (const auto& grid : grids)
    if (grid.empty()) throw InvalidInput("bid grids must be nonempty");

  const auto truthful = utilities(mechanism(truthful_bids(valuations)), valuations);
  std::vector<std::vector<PlayerId>> coalitions;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size > options.max_coalition) continue;
    coalitions.push_back(PlayerSet::from_mask(n, mask).members());
  }

  std::vector<std::vector<IncentiveViolation>> found(coalitions.size());
  const std::size_t workers = std::max<std::size_t>(1, options.workers);
  auto shard = [&](std::size_t w) {
    for (std::size_t c = w; c < coalitions.size(); c += workers) {
      found[c] = scan_coalition(mechanism, valuations, grids, coalitions[c], truthful, options.predicate);
    }
  };
  if (workers == 1) {
    shard(0);
  } else {
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w) jobs.push_back(std::async(std::launch::async, shard, w));
    for (auto& job : jobs) job.get();
  }
  std::vector<IncentiveViolation> out;
  for (auto& batch : found)
    for (auto& v : batch) out.push_back(std::move(v));
  return out;
}

}  // namespace costshare
