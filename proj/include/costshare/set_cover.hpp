#pragma once

// Set cover: instance model, exact cover oracle and the greedy-based DMV
// strategyproof mechanism.

#include <cstddef>
#include <vector>

#include "costshare/core.hpp"

namespace costshare {

struct CoverSet {
  Money cost = 0.0;
  std::vector<PlayerId> members;  // ascending, no duplicates

  friend bool operator==(const CoverSet&, const CoverSet&) = default;
};

class SetCoverInstance {
 public:
  // Throws InvalidInput on negative costs or unknown members, and
  // InfeasibleError if some element is in no set.
  SetCoverInstance(std::size_t num_elements, std::vector<CoverSet> sets);

  std::size_t num_players() const { return num_elements_; }
  const std::vector<CoverSet>& sets() const { return sets_; }
  const PlayerSet& members_of(std::size_t set) const { return member_sets_[set]; }

  friend bool operator==(const SetCoverInstance& a, const SetCoverInstance& b) {
    return a.num_elements_ == b.num_elements_ && a.sets_ == b.sets_;
  }

 private:
  std::size_t num_elements_;
  std::vector<CoverSet> sets_;
  std::vector<PlayerSet> member_sets_;
};

struct SetCoverSolution {
  Money cost = 0.0;
  std::vector<std::size_t> sets;  // ascending set ids
};

// Exact minimum-cost subcollection covering s. Ties go to the
// lexicographically smallest id list.
SetCoverSolution sc_optimal_cost(const SetCoverInstance& instance, const PlayerSet& s,
                                 const Caps& caps = {});

class SetCoverCost final : public CostOracle {
 public:
  explicit SetCoverCost(SetCoverInstance instance, Caps caps = {})
      : instance_(std::move(instance)), caps_(caps) {}
  std::size_t universe_size() const override { return instance_.num_players(); }
  ProblemKind kind() const override { return ProblemKind::kSetCover; }
  Money evaluate(const PlayerSet& s) const override {
    return sc_optimal_cost(instance_, s, caps_).cost;
  }

 private:
  SetCoverInstance instance_;
  Caps caps_;
};

// Greedy mechanism. Each iteration picks the set minimising cost per
// unmarked surviving element it covers (lowest id on ties) and offers each
// of those elements (c_j / m_j) / H_k with k the universe size. If every
// offered element bids at least the offer, all are marked and the set is
// bought; otherwise only the elements bidding strictly less are deleted and
// the remaining ones stay unmarked for later iterations.
MechanismOutcome run_dmv_setcover(const SetCoverInstance& instance, const BidProfile& bids);

// Coalitions of served players paying more than serving them alone costs.
std::vector<CoreViolation> dmv_sc_shares_in_core(const SetCoverInstance& instance,
                                                 const MechanismOutcome& outcome,
                                                 const Caps& caps = {});

}  // namespace costshare
