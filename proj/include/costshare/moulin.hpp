#pragma once

// Moulin mechanism: start from the full universe and repeatedly drop players
// whose current share exceeds their bid.

#include <cstddef>
#include <optional>

#include "costshare/core.hpp"

namespace costshare {

enum class RemovalPolicy {
  kLowestIndex,  // one violator per iteration, lowest id first
  kBatch,        // every current violator at once
};

struct MoulinConfig {
  RemovalPolicy removal_policy = RemovalPolicy::kLowestIndex;
  std::optional<std::size_t> max_iterations;  // defaults to |U| + 1
};

MechanismOutcome run_moulin(const CostShareMethod& method, const CostOracle& oracle,
                            const BidProfile& bids, const MoulinConfig& config = {});

// Explores every violator-selection order and reports whether all of them end
// at the same (S, p). Needs |U| <= 8.
bool removal_order_invariance(const CostShareMethod& method, const CostOracle& oracle,
                              const BidProfile& bids);

}  // namespace costshare
