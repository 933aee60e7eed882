#pragma once

// Brute-force incentive checks over finite bid grids.

#include <cstddef>
#include <functional>
#include <vector>

#include "costshare/core.hpp"

namespace costshare {

using MechanismRunner = std::function<MechanismOutcome(const BidProfile&)>;

// u_i = v_i - p_i when served, -p_i otherwise.
std::vector<Money> utilities(const MechanismOutcome& outcome, const ValuationProfile& valuations);

struct BidGridOptions {
  double step = 0.25;          // multiples of v: 0, step, ..., max_multiple
  double max_multiple = 2.0;
  std::vector<Money> offsets;  // extra points v + offset (kept when >= 0)
};

// Sorted, de-duplicated grid for one player.
std::vector<Money> bid_grid(Money valuation, const BidGridOptions& options = {});
std::vector<std::vector<Money>> bid_grids(const ValuationProfile& valuations,
                                          const BidGridOptions& options = {});

struct IncentiveViolation {
  std::vector<PlayerId> coalition;
  BidProfile bids;
  std::vector<Money> truthful_utility;
  std::vector<Money> deviation_utility;
};

// Unilateral deviations with everyone else truthful.
std::vector<IncentiveViolation> check_strategyproof(const MechanismRunner& mechanism,
                                                    const ValuationProfile& valuations,
                                                    const std::vector<std::vector<Money>>& grids,
                                                    const Caps& caps = {});

enum class GspPredicate {
  kFull,  // some member strictly gains and no member strictly loses
  kWeak,  // every member strictly gains
};

struct GspOptions {
  std::size_t max_coalition = 3;
  GspPredicate predicate = GspPredicate::kFull;
  std::size_t workers = 1;
  Caps caps;
};

// Joint deviations of every coalition of size 1..max_coalition. Violations
// come back ordered by coalition mask, then deviation index.
std::vector<IncentiveViolation> check_gsp(const MechanismRunner& mechanism,
                                          const ValuationProfile& valuations,
                                          const std::vector<std::vector<Money>>& grids,
                                          const GspOptions& options = {});

}  // namespace costshare
