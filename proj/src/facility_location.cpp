#include "costshare/facility_location.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace costshare {

FacilityLocationInstance::FacilityLocationInstance(DistanceMatrix metric,
                                                   std::vector<Facility> facilities,
                                                   std::vector<std::size_t> player_points)
    : metric_(std::move(metric)),
      facilities_(std::move(facilities)),
      player_points_(std::move(player_points)) {
  if (facilities_.empty()) throw InvalidInput("facility location needs at least one facility");
  validate_metric(metric_);
  for (std::size_t q = 0; q < facilities_.size(); ++q) {
    if (facilities_[q].point >= metric_.size()) {
      throw InvalidInput("facility " + std::to_string(q) + " sits on an unknown point");
    }
    const Money f = facilities_[q].opening_cost;
    if (!(f >= 0.0) || std::isinf(f)) {
      throw InvalidInput("facility " + std::to_string(q) + " has an invalid opening cost");
    }
  }
  for (std::size_t i = 0; i < player_points_.size(); ++i) {
    if (player_points_[i] >= metric_.size()) {
      throw InvalidInput("player " + std::to_string(i) + " sits on an unknown point");
    }
  }
}

FacilityLocationInstance FacilityLocationInstance::colocated(std::size_t k, Money opening_cost) {
  return FacilityLocationInstance(DistanceMatrix(1), {Facility{0, opening_cost}},
                                  std::vector<std::size_t>(k, 0));
}

FacilityLocationInstance FacilityLocationInstance::single_facility_line(
    Money opening_cost, std::span<const Money> distances) {
  const std::size_t n = distances.size() + 1;
  std::vector<Money> position(n, 0.0);
  std::copy(distances.begin(), distances.end(), position.begin() + 1);
  DistanceMatrix d(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) d.at(a, b) = std::abs(position[a] - position[b]);
  std::vector<std::size_t> points(distances.size());
  for (std::size_t i = 0; i < points.size(); ++i) points[i] = i + 1;
  return FacilityLocationInstance(std::move(d), {Facility{0, opening_cost}}, std::move(points));
}

FacilityLocationInstance FacilityLocationInstance::scaled_down(double factor) const {
  if (!(factor > 0.0)) throw InvalidInput("scaling factor must be positive");
  DistanceMatrix d = metric_;
  for (std::size_t a = 0; a < d.size(); ++a)
    for (std::size_t b = 0; b < d.size(); ++b) d.at(a, b) = metric_(a, b) / factor;
  auto facilities = facilities_;
  for (auto& f : facilities) f.opening_cost /= factor;
  return FacilityLocationInstance(std::move(d), std::move(facilities), player_points_);
}

FacilityLocationSolution fl_optimal_cost(const FacilityLocationInstance& instance,
                                         const PlayerSet& s, const Caps& caps) {
  const std::size_t num_facilities = instance.num_facilities();
  if (s.universe_size() != instance.num_players()) {
    throw InvalidInput("player set does not match the facility-location universe");
  }
  FacilityLocationSolution best;
  best.assignment.assign(instance.num_players(), kNoResource);
  if (s.empty()) return best;
  if (num_facilities > caps.facilities) {
    throw CapacityError("exact facility location enumerates 2^" + std::to_string(num_facilities) +
                        " facility sets; cap is 2^" + std::to_string(caps.facilities));
  }
  const auto members = s.members();
  best.cost = kInfinity;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << num_facilities); ++mask) {
    std::vector<std::size_t> opened;
    Money cost = 0.0;
    for (std::size_t q = 0; q < num_facilities; ++q) {
      if (mask >> q & 1U) {
        opened.push_back(q);
        cost += instance.opening_cost(q);
      }
    }
    if (cost > best.cost + kEps) continue;
    for (PlayerId i : members) {
      Money nearest = kInfinity;
      for (std::size_t q : opened) nearest = std::min(nearest, instance.distance(i, q));
      cost += nearest;
    }
    const bool better = cost < best.cost - kEps ||
                        (cost <= best.cost + kEps && opened < best.opened);
    if (best.cost == kInfinity || better) {
      best.cost = cost;
      best.opened = std::move(opened);
    }
  }
  for (PlayerId i : members) {
    std::size_t nearest = best.opened.front();
    for (std::size_t q : best.opened) {
      if (instance.distance(i, q) < instance.distance(i, nearest)) nearest = q;
    }
    best.assignment[i] = nearest;
  }
  return best;
}

FacilityLocationCost::FacilityLocationCost(FacilityLocationInstance instance, Caps caps)
    : instance_(std::move(instance)), caps_(caps) {}

Money FacilityLocationCost::evaluate(const PlayerSet& s) const {
  return fl_optimal_cost(instance_, s, caps_).cost;
}

Money fill_time(Money opening_cost, std::vector<Money> distances) {
  if (distances.empty()) throw InvalidInput("a facility never fills without players");
  std::sort(distances.begin(), distances.end());
  Money prefix = 0.0;
  for (std::size_t k = 1; k <= distances.size(); ++k) {
    prefix += distances[k - 1];
    const Money t = (opening_cost + prefix) / static_cast<Money>(k);
    if (k == distances.size() || t <= distances[k]) return t;
  }
  throw InternalError("fill time scan fell through");
}

std::vector<Money> pt_fill_times(const FacilityLocationInstance& instance, const PlayerSet& s) {
  if (s.empty()) throw InvalidInput("fill times are undefined for the empty set");
  if (s.universe_size() != instance.num_players()) {
    throw InvalidInput("player set does not match the facility-location universe");
  }
  const auto members = s.members();
  std::vector<Money> times(instance.num_facilities());
  std::vector<Money> distances(members.size());
  for (std::size_t q = 0; q < instance.num_facilities(); ++q) {
    for (std::size_t b = 0; b < members.size(); ++b) distances[b] = instance.distance(members[b], q);
    times[q] = fill_time(instance.opening_cost(q), distances);
  }
  return times;
}

std::vector<Money> pt_cost_shares(const FacilityLocationInstance& instance, const PlayerSet& s) {
  std::vector<Money> out(instance.num_players(), 0.0);
  if (s.empty()) return out;
  const auto times = pt_fill_times(instance, s);
  s.for_each([&](PlayerId i) {
    Money share = kInfinity;
    for (std::size_t q = 0; q < times.size(); ++q) {
      share = std::min(share, std::max(times[q], instance.distance(i, q)));
    }
    out[i] = share;
  });
  return out;
}

Money pt_cost_share(const FacilityLocationInstance& instance, PlayerId i, const PlayerSet& s) {
  if (!s.contains(i)) {
    throw InvalidInput("player " + std::to_string(i) + " is not in " + s.to_string());
  }
  return pt_cost_shares(instance, s)[i];
}

std::vector<Money> PalTardosMethod::shares(const PlayerSet& s) const {
  return pt_cost_shares(instance_, s);
}

}  // namespace costshare
