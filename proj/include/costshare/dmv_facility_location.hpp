#pragma once

// Event-driven DMV facility-location mechanism on costs scaled down by 1.861.

#include <cstddef>
#include <vector>

#include "costshare/core.hpp"
#include "costshare/facility_location.hpp"

namespace costshare {

inline constexpr double kDmvScale = 1.861;

enum class GhostStatus { kUnconnected, kConnected, kDeleted };

// Snapshot of the ghost process. All amounts are on the scaled costs.
struct GhostProcessState {
  double clock = 0.0;
  std::vector<GhostStatus> status;     // per player
  std::vector<Money> price;            // clock at connection (0 otherwise)
  std::vector<std::size_t> assigned;   // facility, or kNoResource
  std::vector<bool> opened;            // per facility
  std::vector<Money> filled;           // current contributions to unopened facilities
  std::vector<Money> scaled_opening;   // f_q / scale

  // max(0, clock - c'(i, q)) for an unconnected player i and unopened q.
  Money contribution(const FacilityLocationInstance& scaled, PlayerId i, std::size_t q) const;
};

struct DmvFlRun {
  MechanismOutcome outcome;
  GhostProcessState final_state;
};

// Runs the ghost process on `instance` with every cost divided by `scale`:
//  - an unconnected player whose clock reaches its bid is deleted and its
//    contributions to unopened facilities are withdrawn;
//  - an unopened facility whose contributions reach its scaled opening cost
//    opens and connects every positive contributor at the current clock;
//  - an unconnected player whose clock reaches its scaled distance to an
//    open facility connects at the current clock.
// Events at equal times run deletions first, then openings (ascending
// facility), then connections (ascending player). The incurred cost counts
// opened facilities and connections at unscaled magnitudes.
DmvFlRun simulate_dmv_fl(const FacilityLocationInstance& instance, const BidProfile& bids,
                         double scale = kDmvScale);

MechanismOutcome run_dmv_fl(const FacilityLocationInstance& instance, const BidProfile& bids,
                            double scale = kDmvScale);

// Single-facility instances only: maximum absolute difference between the
// DMV connection prices of s (unbounded bids for s, zero bids elsewhere) and
// the Pal-Tardos shares of s on the scaled-down instance.
Money dmv_fl_single_facility_crosscheck(const FacilityLocationInstance& instance,
                                        const PlayerSet& s, double scale = kDmvScale);

}  // namespace costshare
