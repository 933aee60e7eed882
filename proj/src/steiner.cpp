#include "costshare/steiner.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace costshare {

SteinerInstance::SteinerInstance(Graph graph, VertexId root, std::vector<VertexId> player_hosts)
    : graph_(std::move(graph)), root_(root), player_hosts_(std::move(player_hosts)) {
  if (root_ >= graph_.num_vertices) throw InvalidInput("root vertex is not in the graph");
  for (std::size_t i = 0; i < player_hosts_.size(); ++i) {
    if (player_hosts_[i] >= graph_.num_vertices) {
      throw InvalidInput("player " + std::to_string(i) + " sits on an unknown vertex");
    }
  }
  closure_ = shortest_path_closure(graph_);
}

DreyfusWagnerTable::DreyfusWagnerTable(const DistanceMatrix& metric, std::vector<VertexId> terminals)
    : terminals_(std::move(terminals)), num_vertices_(metric.size()) {
  if (terminals_.empty()) throw InvalidInput("Dreyfus-Wagner needs a root terminal");
  if (terminals_.size() > 63) throw CapacityError("too many Steiner terminals");
  const std::size_t m = terminals_.size() - 1;
  const std::size_t n = num_vertices_;
  const std::uint64_t full = std::uint64_t{1} << m;
  // dp[mask * n + v]: cheapest tree spanning the terminals of mask and v.
  std::vector<Money> dp(full * n, kInfinity);
  for (std::size_t v = 0; v < n; ++v) dp[v] = 0.0;
  std::vector<Money> merged(n);
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    Money* row = &dp[mask * n];
    if (std::has_single_bit(mask)) {
      const VertexId x = terminals_[std::countr_zero(mask) + 1];
      for (std::size_t v = 0; v < n; ++v) row[v] = metric(x, v);
      continue;
    }
    const std::uint64_t low = mask & (~mask + 1);
    std::fill(merged.begin(), merged.end(), kInfinity);
    for (std::uint64_t sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask) {
      if ((sub & low) == 0) continue;  // each split once
      const Money* a = &dp[sub * n];
      const Money* b = &dp[(mask ^ sub) * n];
      for (std::size_t v = 0; v < n; ++v) merged[v] = std::min(merged[v], a[v] + b[v]);
    }
    for (std::size_t v = 0; v < n; ++v) {
      Money best = kInfinity;
      for (std::size_t u = 0; u < n; ++u) best = std::min(best, merged[u] + metric(u, v));
      row[v] = best;
    }
  }
  root_cost_.resize(full);
  const VertexId root = terminals_.front();
  for (std::uint64_t mask = 0; mask < full; ++mask) root_cost_[mask] = dp[mask * n + root];
}

Money DreyfusWagnerTable::tree_cost(std::uint64_t mask) const {
  if (mask >= root_cost_.size()) throw InvalidInput("terminal mask out of range");
  return root_cost_[mask];
}

Money steiner_tree_cost(const DistanceMatrix& metric, std::span<const VertexId> terminals,
                        std::size_t cap) {
  std::vector<VertexId> distinct(terminals.begin(), terminals.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() <= 1) return 0.0;
  if (distinct.size() > cap) {
    throw CapacityError("Steiner oracle over " + std::to_string(distinct.size()) +
                        " terminals exceeds the cap of " + std::to_string(cap));
  }
  for (VertexId v : distinct) {
    if (v >= metric.size()) throw InvalidInput("terminal outside the metric");
  }
  if (distinct.size() == 2) return metric(distinct[0], distinct[1]);
  DreyfusWagnerTable table(metric, distinct);
  return table.tree_cost((std::uint64_t{1} << (distinct.size() - 1)) - 1);
}

Money steiner_optimal_cost(const SteinerInstance& instance, const PlayerSet& s, const Caps& caps) {
  if (s.universe_size() != instance.num_players()) {
    throw InvalidInput("player set does not match the Steiner universe");
  }
  if (s.empty()) return 0.0;
  std::vector<VertexId> terminals{instance.root()};
  s.for_each([&](PlayerId i) { terminals.push_back(instance.host(i)); });
  return steiner_tree_cost(instance.closure(), terminals, caps.steiner_terminals);
}

namespace {

struct Component {
  std::vector<std::size_t> terminals;  // indices into the terminal list
  std::size_t players = 0;
  Money dual = 0.0;
  bool active = true;
  bool alive = true;
};

}  // namespace

MoatTrace jv_moat_process(const SteinerInstance& instance, const PlayerSet& s) {
  if (s.empty()) throw InvalidInput("Jain-Vazirani shares are undefined for the empty set");
  if (s.universe_size() != instance.num_players()) {
    throw InvalidInput("player set does not match the Steiner universe");
  }
  MoatTrace trace;
  trace.shares.assign(instance.num_players(), 0.0);

  // Terminal 0 is the root; the others are the distinct hosts of s.
  std::vector<VertexId>& terminals = trace.terminals;
  terminals.push_back(instance.root());
  s.for_each([&](PlayerId i) {
    if (instance.host(i) != instance.root()) terminals.push_back(instance.host(i));
  });
  std::sort(terminals.begin() + 1, terminals.end());
  terminals.erase(std::unique(terminals.begin() + 1, terminals.end()), terminals.end());
  const std::size_t num_terminals = terminals.size();

  std::vector<std::vector<PlayerId>> players_at(num_terminals);
  s.for_each([&](PlayerId i) {
    const auto it = std::lower_bound(terminals.begin() + 1, terminals.end(), instance.host(i));
    const std::size_t t = instance.host(i) == instance.root()
                              ? 0
                              : static_cast<std::size_t>(it - terminals.begin());
    players_at[t].push_back(i);
  });

  // Components are indexed by their lowest terminal index; the root's is 0.
  std::vector<Component> comps(num_terminals);
  for (std::size_t t = 0; t < num_terminals; ++t) {
    comps[t].terminals = {t};
    comps[t].players = players_at[t].size();
    comps[t].active = t != 0;
  }
  std::vector<Money> radius(num_terminals, 0.0);
  double clock = 0.0;

  auto record_moat = [&](const Component& c) {
    Moat moat;
    for (std::size_t t : c.terminals) moat.terminals.push_back(terminals[t]);
    std::sort(moat.terminals.begin(), moat.terminals.end());
    moat.dual = c.dual;
    trace.moats.push_back(std::move(moat));
  };

  for (;;) {
    std::size_t alive = 0;
    for (const auto& c : comps) alive += c.alive ? 1 : 0;
    if (alive <= 1) break;

    // Earliest touching time over component pairs, scanned in ascending
    // (component, component) order so ties resolve to the smallest pair.
    Money best = kInfinity;
    std::size_t best_a = 0, best_b = 0;
    for (std::size_t a = 0; a < num_terminals; ++a) {
      if (!comps[a].alive) continue;
      for (std::size_t b = a + 1; b < num_terminals; ++b) {
        if (!comps[b].alive) continue;
        Money pair_best = kInfinity;
        for (std::size_t u : comps[a].terminals)
          for (std::size_t v : comps[b].terminals) {
            const int rate = int{u != 0} + int{v != 0};
            const Money slack = instance.distance(terminals[u], terminals[v]) - radius[u] - radius[v];
            pair_best = std::min(pair_best, std::max(0.0, slack) / rate);
          }
        if (pair_best < best) {
          best = pair_best;
          best_a = a;
          best_b = b;
        }
      }
    }
    if (best == kInfinity) throw InternalError("moat process found no merge event");

    for (auto& c : comps) {
      if (!c.alive) continue;
      for (std::size_t t : c.terminals) {
        if (t != 0) radius[t] += best;
        if (!c.active) continue;
        for (PlayerId i : players_at[t]) trace.shares[i] += best / static_cast<Money>(c.players);
      }
      if (c.active) c.dual += best;
    }
    clock += best;

    Component& keep = comps[best_a];
    Component& gone = comps[best_b];
    record_moat(keep);
    record_moat(gone);
    const bool reached_root = !keep.active || !gone.active;
    trace.merges.push_back({clock, terminals[keep.terminals.front()],
                            terminals[gone.terminals.front()], reached_root});
    keep.terminals.insert(keep.terminals.end(), gone.terminals.begin(), gone.terminals.end());
    std::sort(keep.terminals.begin(), keep.terminals.end());
    keep.players += gone.players;
    keep.dual = 0.0;
    keep.active = keep.active && gone.active;
    gone.alive = false;
  }
  for (const auto& c : comps) {
    if (c.alive) record_moat(c);
  }
  return trace;
}

std::vector<Money> jv_cost_shares(const SteinerInstance& instance, const PlayerSet& s) {
  return jv_moat_process(instance, s).shares;
}

}  // namespace costshare
