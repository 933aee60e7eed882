#pragma once

// Uncapacitated facility location: instance model, exact cost oracle and the
// Pal-Tardos cross-monotonic cost-sharing method.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "costshare/core.hpp"
#include "costshare/metric.hpp"

namespace costshare {

struct Facility {
  std::size_t point = 0;
  Money opening_cost = 0.0;

  friend bool operator==(const Facility&, const Facility&) = default;
};

// Players and facilities live on the points of one metric; several players
// (and facilities) may share a point.
class FacilityLocationInstance {
 public:
  FacilityLocationInstance(DistanceMatrix metric, std::vector<Facility> facilities,
                           std::vector<std::size_t> player_points);

  // k players sharing the point of a single facility with the given cost.
  static FacilityLocationInstance colocated(std::size_t k, Money opening_cost);
  // One facility at point 0; player i at distance distances[i] from it (and
  // at distance |d_i - d_j| from player j, a line metric).
  static FacilityLocationInstance single_facility_line(Money opening_cost,
                                                       std::span<const Money> distances);
  static FacilityLocationInstance single_facility_line(Money opening_cost,
                                                       std::initializer_list<Money> distances) {
    return single_facility_line(opening_cost, std::span<const Money>(distances.begin(), distances.size()));
  }

  std::size_t num_players() const { return player_points_.size(); }
  std::size_t num_facilities() const { return facilities_.size(); }
  const DistanceMatrix& metric() const { return metric_; }
  const std::vector<Facility>& facilities() const { return facilities_; }
  const std::vector<std::size_t>& player_points() const { return player_points_; }

  Money distance(PlayerId i, std::size_t facility) const {
    return metric_(player_points_[i], facilities_[facility].point);
  }
  Money opening_cost(std::size_t facility) const { return facilities_[facility].opening_cost; }

  // Every distance and opening cost divided by `factor`.
  FacilityLocationInstance scaled_down(double factor) const;

  friend bool operator==(const FacilityLocationInstance&, const FacilityLocationInstance&) = default;

 private:
  DistanceMatrix metric_;
  std::vector<Facility> facilities_;
  std::vector<std::size_t> player_points_;
};

struct FacilityLocationSolution {
  Money cost = 0.0;
  std::vector<std::size_t> opened;      // ascending facility ids
  std::vector<std::size_t> assignment;  // per universe player; kNoResource off S
};

// Exact optimum by enumerating nonempty facility subsets; C(empty) = 0 with
// nothing opened. Ties go to the lexicographically smallest facility list.
FacilityLocationSolution fl_optimal_cost(const FacilityLocationInstance& instance,
                                         const PlayerSet& s, const Caps& caps = {});

class FacilityLocationCost final : public CostOracle {
 public:
  explicit FacilityLocationCost(FacilityLocationInstance instance, Caps caps = {});
  std::size_t universe_size() const override { return instance_.num_players(); }
  ProblemKind kind() const override { return ProblemKind::kFacilityLocation; }
  Money evaluate(const PlayerSet& s) const override;

 private:
  FacilityLocationInstance instance_;
  Caps caps_;
};

// Smallest t with sum_j max(0, t - distances[j]) = opening_cost, found by
// scanning breakpoints of the piecewise-linear left side. With a zero cost
// this is the minimum distance. Requires a nonempty distance list.
Money fill_time(Money opening_cost, std::vector<Money> distances);

// Fill time t^q of every facility when the players of s grow their balls.
std::vector<Money> pt_fill_times(const FacilityLocationInstance& instance, const PlayerSet& s);

// Earliest time a full facility lies in the ball of i: min_q max(t^q, c(q,i)).
Money pt_cost_share(const FacilityLocationInstance& instance, PlayerId i, const PlayerSet& s);
std::vector<Money> pt_cost_shares(const FacilityLocationInstance& instance, const PlayerSet& s);

class PalTardosMethod final : public CostShareMethod {
 public:
  explicit PalTardosMethod(FacilityLocationInstance instance) : instance_(std::move(instance)) {}
  std::size_t universe_size() const override { return instance_.num_players(); }
  MethodKind kind() const override { return MethodKind::kPalTardos; }
  std::vector<Money> shares(const PlayerSet& s) const override;

 private:
  FacilityLocationInstance instance_;
};

inline PalTardosMethod pt_method(const FacilityLocationInstance& instance) {
  return PalTardosMethod(instance);
}

}  // namespace costshare
