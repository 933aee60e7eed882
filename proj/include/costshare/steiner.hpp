#pragma once

// Rooted Steiner tree: instance model, exact Dreyfus-Wagner oracle and the
// Jain-Vazirani moat-growing cost-sharing method.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "costshare/core.hpp"
#include "costshare/metric.hpp"

namespace costshare {

class SteinerInstance {
 public:
  // Throws InvalidInput if the graph is disconnected or a vertex is unknown.
  SteinerInstance(Graph graph, VertexId root, std::vector<VertexId> player_hosts);

  std::size_t num_players() const { return player_hosts_.size(); }
  std::size_t num_vertices() const { return graph_.num_vertices; }
  const Graph& graph() const { return graph_; }
  VertexId root() const { return root_; }
  const std::vector<VertexId>& player_hosts() const { return player_hosts_; }
  VertexId host(PlayerId i) const { return player_hosts_[i]; }
  // Shortest-path metric closure of the graph.
  const DistanceMatrix& closure() const { return closure_; }
  Money distance(VertexId a, VertexId b) const { return closure_(a, b); }

  friend bool operator==(const SteinerInstance& a, const SteinerInstance& b) {
    return a.graph_ == b.graph_ && a.root_ == b.root_ && a.player_hosts_ == b.player_hosts_;
  }

 private:
  Graph graph_;
  VertexId root_;
  std::vector<VertexId> player_hosts_;
  DistanceMatrix closure_;
};

// Dreyfus-Wagner table over a metric: terminals[0] is the root and
// tree_cost(mask) is the cheapest tree spanning the root and the non-root
// terminals selected by mask (bit b <-> terminals[b + 1]).
class DreyfusWagnerTable {
 public:
  DreyfusWagnerTable(const DistanceMatrix& metric, std::vector<VertexId> terminals);
  std::size_t num_terminals() const { return terminals_.size(); }
  const std::vector<VertexId>& terminals() const { return terminals_; }
  Money tree_cost(std::uint64_t mask) const;

 private:
  std::vector<VertexId> terminals_;
  std::size_t num_vertices_;
  std::vector<Money> root_cost_;  // indexed by mask
};

// Cheapest tree spanning `terminals` in the metric. Throws CapacityError if
// more than `cap` distinct terminals are given.
Money steiner_tree_cost(const DistanceMatrix& metric, std::span<const VertexId> terminals,
                        std::size_t cap);

// C(S): cheapest subgraph spanning the hosts of S and the root.
Money steiner_optimal_cost(const SteinerInstance& instance, const PlayerSet& s,
                           const Caps& caps = {});

class SteinerTreeCost final : public CostOracle {
 public:
  explicit SteinerTreeCost(SteinerInstance instance, Caps caps = {})
      : instance_(std::move(instance)), caps_(caps) {}
  std::size_t universe_size() const override { return instance_.num_players(); }
  ProblemKind kind() const override { return ProblemKind::kSteinerTree; }
  Money evaluate(const PlayerSet& s) const override {
    return steiner_optimal_cost(instance_, s, caps_);
  }

 private:
  SteinerInstance instance_;
  Caps caps_;
};

// A component of the moat process together with the dual it accumulated
// while it existed. `terminals` are graph vertices.
struct Moat {
  std::vector<VertexId> terminals;
  Money dual = 0.0;
};

struct MoatMerge {
  double time = 0.0;
  VertexId first = 0;   // lowest terminal vertex of each merged component
  VertexId second = 0;
  bool reached_root = false;
};

struct MoatTrace {
  std::vector<VertexId> terminals;  // root first, then player hosts ascending
  std::vector<Moat> moats;          // laminar family, every component ever formed
  std::vector<MoatMerge> merges;
  std::vector<Money> shares;        // per universe player
};

// Runs the primal-dual moat process for the players of s on the metric
// closure. The ball around every non-root terminal grows at unit rate; the
// root's ball stays empty. A component without the root charges its growth
// equally to the players it holds; once it contains the root its balls keep
// growing but nobody is charged. Two components merge when the balls around
// some pair of their terminals touch, and the process ends when everything
// has reached the root. Simultaneous merges are taken in ascending
// (component, component) order.
MoatTrace jv_moat_process(const SteinerInstance& instance, const PlayerSet& s);

std::vector<Money> jv_cost_shares(const SteinerInstance& instance, const PlayerSet& s);

class JainVaziraniMethod final : public CostShareMethod {
 public:
  explicit JainVaziraniMethod(SteinerInstance instance) : instance_(std::move(instance)) {}
  std::size_t universe_size() const override { return instance_.num_players(); }
  MethodKind kind() const override { return MethodKind::kJainVazirani; }
  std::vector<Money> shares(const PlayerSet& s) const override {
    return jv_cost_shares(instance_, s);
  }

 private:
  SteinerInstance instance_;
};

inline JainVaziraniMethod jv_method(const SteinerInstance& instance) {
  return JainVaziraniMethod(instance);
}

}  // namespace costshare
