#include "costshare/set_cover.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace costshare {

SetCoverInstance::SetCoverInstance(std::size_t num_elements, std::vector<CoverSet> sets)
    : num_elements_(num_elements), sets_(std::move(sets)) {
  PlayerSet covered(num_elements_);
  for (std::size_t j = 0; j < sets_.size(); ++j) {
    CoverSet& set = sets_[j];
    if (!(set.cost >= 0.0) || std::isinf(set.cost)) {
      throw InvalidInput("set " + std::to_string(j) + " has an invalid cost");
    }
    std::sort(set.members.begin(), set.members.end());
    if (std::adjacent_find(set.members.begin(), set.members.end()) != set.members.end()) {
      throw InvalidInput("set " + std::to_string(j) + " lists an element twice");
    }
    for (PlayerId e : set.members) {
      if (e >= num_elements_) {
        throw InvalidInput("set " + std::to_string(j) + " contains unknown element " +
                           std::to_string(e));
      }
    }
    member_sets_.push_back(PlayerSet::of(num_elements_, set.members));
    covered = covered | member_sets_.back();
  }
  for (PlayerId e = 0; e < num_elements_; ++e) {
    if (!covered.contains(e)) {
      throw InfeasibleError("element " + std::to_string(e) + " is not covered by any set");
    }
  }
}

SetCoverSolution sc_optimal_cost(const SetCoverInstance& instance, const PlayerSet& s,
                                 const Caps& caps) {
  if (s.universe_size() != instance.num_players()) {
    throw InvalidInput("player set does not match the set-cover universe");
  }
  SetCoverSolution best;
  if (s.empty()) return best;
  const std::size_t num_sets = instance.sets().size();
  if (num_sets > caps.cover_sets) {
    throw CapacityError("exact set cover enumerates 2^" + std::to_string(num_sets) +
                        " subcollections; cap is 2^" + std::to_string(caps.cover_sets));
  }
  if (instance.num_players() > 64) throw CapacityError("exact set cover needs at most 64 elements");
  const std::uint64_t target = s.to_mask();
  std::vector<std::uint64_t> masks(num_sets);
  for (std::size_t j = 0; j < num_sets; ++j) masks[j] = instance.members_of(j).to_mask() & target;

  best.cost = kInfinity;
  bool found = false;
  for (std::uint64_t pick = 1; pick < (std::uint64_t{1} << num_sets); ++pick) {
    std::uint64_t covered = 0;
    Money cost = 0.0;
    for (std::size_t j = 0; j < num_sets; ++j) {
      if (pick >> j & 1U) {
        covered |= masks[j];
        cost += instance.sets()[j].cost;
      }
    }
    if (covered != target) continue;
    std::vector<std::size_t> ids;
    for (std::size_t j = 0; j < num_sets; ++j)
      if (pick >> j & 1U) ids.push_back(j);
    if (!found || cost < best.cost - kEps || (cost <= best.cost + kEps && ids < best.sets)) {
      best.cost = cost;
      best.sets = std::move(ids);
      found = true;
    }
  }
  if (!found) throw InfeasibleError("set " + s.to_string() + " cannot be covered");
  return best;
}

MechanismOutcome run_dmv_setcover(const SetCoverInstance& instance, const BidProfile& bids) {
  const std::size_t k = instance.num_players();
  if (bids.size() != k) throw InvalidInput("bid profile size does not match the universe");
  MechanismOutcome out;
  out.served = PlayerSet(k);
  out.prices.assign(k, 0.0);
  if (k == 0) return out;
  const double hk = harmonic(k);

  PlayerSet alive = PlayerSet::full(k);  // not deleted
  PlayerSet unmarked = PlayerSet::full(k);
  std::size_t step = 0;
  while (!(alive & unmarked).empty()) {
    const PlayerSet pending = alive & unmarked;
    std::size_t chosen = kNoResource;
    double best_ratio = kInfinity;
    for (std::size_t j = 0; j < instance.sets().size(); ++j) {
      const std::size_t count = (instance.members_of(j) & pending).size();
      if (count == 0) continue;
      const double ratio = instance.sets()[j].cost / static_cast<double>(count);
      if (chosen == kNoResource || ratio < best_ratio) {
        chosen = j;
        best_ratio = ratio;
      }
    }
    if (chosen == kNoResource) {
      throw InfeasibleError("surviving players " + pending.to_string() + " cannot be covered");
    }
    const Money offer = best_ratio / hk;
    const PlayerSet offered = instance.members_of(chosen) & pending;
    bool all_accept = true;
    offered.for_each([&](PlayerId i) {
      if (bids[i] < offer) {
        all_accept = false;
        alive.erase(i);
        out.trace.push_back({TraceKind::kDeleted, step, 0.0, i, chosen, offer, bids[i]});
      }
    });
    if (all_accept) {
      offered.for_each([&](PlayerId i) {
        unmarked.erase(i);
        out.prices[i] = offer;
        out.trace.push_back({TraceKind::kMarked, step, 0.0, i, chosen, offer, bids[i]});
      });
      out.incurred_cost += instance.sets()[chosen].cost;
      out.trace.push_back({TraceKind::kSetBought, step, 0.0, 0, chosen,
                           instance.sets()[chosen].cost, 0.0});
    }
    ++step;
  }
  out.served = alive;
  return out;
}

std::vector<CoreViolation> dmv_sc_shares_in_core(const SetCoverInstance& instance,
                                                 const MechanismOutcome& outcome,
                                                 const Caps& caps) {
  SetCoverCost oracle(instance, caps);
  return check_price_core(outcome.prices, oracle, outcome.served, caps);
}

}  // namespace costshare
