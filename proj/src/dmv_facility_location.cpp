#include "costshare/dmv_facility_location.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace costshare {

Money GhostProcessState::contribution(const FacilityLocationInstance& scaled, PlayerId i,
                                      std::size_t q) const {
  if (status[i] != GhostStatus::kUnconnected || opened[q]) return 0.0;
  return std::max(0.0, clock - scaled.distance(i, q));
}

DmvFlRun simulate_dmv_fl(const FacilityLocationInstance& instance, const BidProfile& bids,
                         double scale) {
  const std::size_t n = instance.num_players();
  const std::size_t num_facilities = instance.num_facilities();
  if (bids.size() != n) throw InvalidInput("bid profile size does not match the universe");
  const FacilityLocationInstance scaled = instance.scaled_down(scale);

  DmvFlRun run;
  GhostProcessState& st = run.final_state;
  st.status.assign(n, GhostStatus::kUnconnected);
  st.price.assign(n, 0.0);
  st.assigned.assign(n, kNoResource);
  st.opened.assign(num_facilities, false);
  st.filled.assign(num_facilities, 0.0);
  for (std::size_t q = 0; q < num_facilities; ++q) st.scaled_opening.push_back(scaled.opening_cost(q));

  MechanismOutcome& out = run.outcome;
  out.prices.assign(n, 0.0);

  auto unconnected = [&] {
    std::vector<PlayerId> a;
    for (PlayerId i = 0; i < n; ++i)
      if (st.status[i] == GhostStatus::kUnconnected) a.push_back(i);
    return a;
  };
  auto connect = [&](PlayerId i, std::size_t q, std::size_t step) {
    st.status[i] = GhostStatus::kConnected;
    st.price[i] = st.clock;
    st.assigned[i] = q;
    out.trace.push_back({TraceKind::kConnected, step, st.clock, i, q, st.clock, bids[i]});
  };
  auto refresh_filled = [&] {
    for (std::size_t q = 0; q < num_facilities; ++q) {
      Money total = 0.0;
      for (PlayerId i = 0; i < n; ++i) total += st.contribution(scaled, i, q);
      st.filled[q] = st.opened[q] ? 0.0 : total;
    }
  };

  const std::size_t max_steps = 4 * (n + num_facilities) + 8;
  std::size_t step = 0;
  for (auto active = unconnected(); !active.empty(); active = unconnected(), ++step) {
    if (step > max_steps) throw InternalError("ghost process failed to terminate");

    double next = kInfinity;
    for (PlayerId i : active) next = std::min(next, bids[i]);
    std::vector<Money> distances(active.size());
    for (std::size_t q = 0; q < num_facilities; ++q) {
      for (std::size_t b = 0; b < active.size(); ++b) distances[b] = scaled.distance(active[b], q);
      if (st.opened[q]) {
        for (Money d : distances) next = std::min(next, std::max(st.clock, d));
      } else {
        next = std::min(next, std::max(st.clock, fill_time(st.scaled_opening[q], distances)));
      }
    }
    if (next == kInfinity) throw InternalError("ghost process has no next event");
    st.clock = std::max(st.clock, next);
    const double slack = kEps * std::max(1.0, st.clock);

    for (PlayerId i : active) {
      if (bids[i] <= st.clock + slack) {
        st.status[i] = GhostStatus::kDeleted;
        out.trace.push_back({TraceKind::kDeleted, step, st.clock, i, kNoResource, st.clock, bids[i]});
      }
    }
    for (std::size_t q = 0; q < num_facilities; ++q) {
      if (st.opened[q]) continue;
      Money total = 0.0;
      for (PlayerId i = 0; i < n; ++i) total += st.contribution(scaled, i, q);
      if (total < st.scaled_opening[q] - kEps * std::max(1.0, st.scaled_opening[q])) continue;
      std::vector<PlayerId> contributors;
      for (PlayerId i = 0; i < n; ++i) {
        if (st.status[i] == GhostStatus::kUnconnected && st.clock - scaled.distance(i, q) > slack) {
          contributors.push_back(i);
        }
      }
      st.opened[q] = true;
      out.trace.push_back({TraceKind::kFacilityOpened, step, st.clock, 0, q, instance.opening_cost(q), 0.0});
      for (PlayerId i : contributors) connect(i, q, step);
    }
    for (PlayerId i = 0; i < n; ++i) {
      if (st.status[i] != GhostStatus::kUnconnected) continue;
      std::size_t target = kNoResource;
      for (std::size_t q = 0; q < num_facilities; ++q) {
        if (!st.opened[q] || scaled.distance(i, q) > st.clock + slack) continue;
        if (target == kNoResource || scaled.distance(i, q) < scaled.distance(i, target)) target = q;
      }
      if (target != kNoResource) connect(i, target, step);
    }
    refresh_filled();
  }

  out.served = PlayerSet(n);
  for (std::size_t q = 0; q < num_facilities; ++q)
    if (st.opened[q]) out.incurred_cost += instance.opening_cost(q);
  for (PlayerId i = 0; i < n; ++i) {
    if (st.status[i] != GhostStatus::kConnected) continue;
    out.served.insert(i);
    out.prices[i] = st.price[i];
    out.incurred_cost += instance.distance(i, st.assigned[i]);
  }
  return run;
}

MechanismOutcome run_dmv_fl(const FacilityLocationInstance& instance, const BidProfile& bids,
                            double scale) {
  return simulate_dmv_fl(instance, bids, scale).outcome;
}

Money dmv_fl_single_facility_crosscheck(const FacilityLocationInstance& instance,
                                        const PlayerSet& s, double scale) {
  if (instance.num_facilities() != 1) {
    throw InvalidInput("the single-facility cross-check needs exactly one facility");
  }
  if (s.universe_size() != instance.num_players()) {
    throw InvalidInput("player set does not match the facility-location universe");
  }
  if (s.empty()) return 0.0;
  std::vector<Money> bids(instance.num_players(), 0.0);
  s.for_each([&](PlayerId i) { bids[i] = kInfinity; });
  const MechanismOutcome outcome = run_dmv_fl(instance, BidProfile(bids), scale);
  const auto pt = pt_cost_shares(instance.scaled_down(scale), s);
  Money worst = 0.0;
  s.for_each([&](PlayerId i) {
    if (!outcome.served.contains(i)) {
      worst = kInfinity;
      return;
    }
    worst = std::max(worst, std::abs(outcome.prices[i] - pt[i]));
  });
  return worst;
}

}  // namespace costshare
