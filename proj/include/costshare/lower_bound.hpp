#pragma once

// Recursive two-hop network on which every budget-balanced Steiner tree
// method has a large prefix sum, plus the group selection that exhibits it.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "costshare/core.hpp"
#include "costshare/metric.hpp"
#include "costshare/steiner.hpp"

namespace costshare {

struct LevelEdge {
  VertexId u = 0;
  VertexId v = 0;
  Money cost = 0.0;
  std::size_t level = 0;
  std::size_t parent = kNoResource;  // index of the level-(j-1) edge it replaces
};

struct LowerBoundConstruction {
  explicit LowerBoundConstruction(SteinerInstance network) : instance(std::move(network)) {}

  std::size_t k = 0;
  std::size_t sqrt_k = 0;
  std::size_t levels = 0;  // p = log2(k) / 2
  double beta = 1.0;
  std::size_t m = 0;
  double guaranteed_m = 0.0;    // ceil(8 beta sqrt(k) (2 beta)^sqrt(k))
  bool guaranteed_scale = false;

  // edges[j] are the edges of G_j; G_p is the final network.
  std::vector<std::vector<LevelEdge>> edges;
  // vertices[j] = V_j; vertices[0] = {root, far end}.
  std::vector<std::vector<VertexId>> vertices;
  // children[j][e] = the m vertices of V_j created for edge e of G_(j-1).
  std::vector<std::vector<std::vector<VertexId>>> children;
  std::vector<std::size_t> vertex_level;
  // Colocated players at each vertex (empty for the root).
  std::vector<std::vector<PlayerId>> vertex_players;

  SteinerInstance instance;

  std::size_t num_players() const { return instance.num_players(); }
};

// k must be a power of 4 (k >= 4). Without an override m takes its guaranteed
// value and CapacityError is thrown when the universe exceeds the cap.
LowerBoundConstruction build_lower_bound(std::size_t k, double beta,
                                         std::optional<std::size_t> m_override = std::nullopt,
                                         const Caps& caps = {});

enum class GroupOrderSource { kGreedy, kExhaustive, kFallback };
std::string to_string(GroupOrderSource source);

struct GroupChoice {
  std::size_t level = 0;
  std::size_t parent_edge = kNoResource;  // level-(j-1) edge id, kNoResource for S_0
  std::size_t group = 0;                  // index among the edge's m groups
  VertexId vertex = 0;
  bool good = false;
  GroupOrderSource source = GroupOrderSource::kGreedy;
  std::size_t groups_tested = 0;
  std::vector<PlayerId> ordering;
  std::vector<Money> shares;
  std::vector<Money> thresholds;
};

struct GoodGroupSelection {
  PlayerSet selected;
  std::vector<PlayerId> ordering;
  std::vector<GroupChoice> choices;
  std::vector<std::size_t> level_sizes;  // |S_j|
  std::vector<Money> level_costs;        // C(S_0 + ... + S_j)
  bool all_good = false;
  bool sizes_ok = false;  // |S_j| = 2^(j-1) sqrt(k), |S_0| = sqrt(k)
  bool costs_ok = false;  // every prefix level costs 1
  Money prefix_sum = 0.0;
  Money bound = 0.0;      // (H_sqrt(k) / 4 beta)(1 + p / 2)
  Money cost = 0.0;       // C(S)
};

// Level by level, active edges in ascending id order; the first good group of
// each active edge is selected. A group is tested by greedy peeling and, when
// sqrt(k) <= 4 and peeling fails, by trying every ordering. When no group is
// good the group with the longest peeled prefix (lowest index on ties) is
// selected and marked not good so the construction completes.
GoodGroupSelection select_good_groups(const LowerBoundConstruction& construction,
                                      const CostShareMethod& method, const CostOracle& oracle);

}  // namespace costshare
