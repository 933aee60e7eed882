#include "costshare/lower_bound.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "costshare/summability.hpp"

namespace costshare {

std::string to_string(GroupOrderSource source) {
  switch (source) {
    case GroupOrderSource::kGreedy: return "greedy";
    case GroupOrderSource::kExhaustive: return "exhaustive";
    case GroupOrderSource::kFallback: return "fallback";
  }
  return "unknown";
}

LowerBoundConstruction build_lower_bound(std::size_t k, double beta,
                                         std::optional<std::size_t> m_override, const Caps& caps) {
  if (k < 4 || (k & (k - 1)) != 0) throw InvalidInput("k must be a power of 4 and at least 4");
  std::size_t log2k = 0;
  while ((std::size_t{1} << log2k) < k) ++log2k;
  if (log2k % 2 != 0) throw InvalidInput("k must be a power of 4 and at least 4");
  if (!(beta >= 1.0) || std::isinf(beta)) throw InvalidInput("beta must be a finite number >= 1");
  if (m_override && *m_override < 2) throw InvalidInput("m must be at least 2");

  const std::size_t sqrt_k = std::size_t{1} << (log2k / 2);
  const std::size_t levels = log2k / 2;
  const double guaranteed_m = std::ceil(8.0 * beta * static_cast<double>(sqrt_k) *
                                   std::pow(2.0 * beta, static_cast<double>(sqrt_k)));
  const double m_value = m_override ? static_cast<double>(*m_override) : guaranteed_m;

  double players = 1.0;
  for (std::size_t j = 1; j <= levels; ++j) players += m_value * std::pow(2.0 * m_value, double(j - 1));
  players *= static_cast<double>(sqrt_k);
  if (players > static_cast<double>(caps.lower_bound_players)) {
    throw CapacityError("construction with m = " + std::to_string(static_cast<long long>(m_value)) +
                        " has " + std::to_string(static_cast<long long>(players)) +
                        " players; cap is " + std::to_string(caps.lower_bound_players));
  }
  const std::size_t m = static_cast<std::size_t>(m_value);

  std::vector<std::vector<LevelEdge>> edges(levels + 1);
  std::vector<std::vector<VertexId>> vertices(levels + 1);
  std::vector<std::vector<std::vector<VertexId>>> children(levels + 1);
  std::vector<std::size_t> vertex_level{0, 0};
  edges[0].push_back({0, 1, 1.0, 0, kNoResource});
  vertices[0] = {0, 1};
  VertexId next = 2;
  for (std::size_t j = 1; j <= levels; ++j) {
    const Money cost = std::ldexp(1.0, -static_cast<int>(j));
    children[j].resize(edges[j - 1].size());
    for (std::size_t e = 0; e < edges[j - 1].size(); ++e) {
      const LevelEdge& old = edges[j - 1][e];
      for (std::size_t r = 0; r < m; ++r) {
        const VertexId w = next++;
        vertices[j].push_back(w);
        vertex_level.push_back(j);
        children[j][e].push_back(w);
        edges[j].push_back({old.u, w, cost, j, e});
        edges[j].push_back({w, old.v, cost, j, e});
      }
    }
  }

  std::vector<std::vector<PlayerId>> vertex_players(next);
  std::vector<VertexId> hosts;
  auto place = [&](VertexId v) {
    for (std::size_t c = 0; c < sqrt_k; ++c) {
      vertex_players[v].push_back(hosts.size());
      hosts.push_back(v);
    }
  };
  place(1);
  for (std::size_t j = 1; j <= levels; ++j)
    for (VertexId v : vertices[j]) place(v);

  Graph graph{next, {}};
  for (const LevelEdge& e : edges[levels]) graph.edges.push_back({e.u, e.v, e.cost});

  LowerBoundConstruction out(SteinerInstance(std::move(graph), 0, std::move(hosts)));
  out.k = k;
  out.sqrt_k = sqrt_k;
  out.levels = levels;
  out.beta = beta;
  out.m = m;
  out.guaranteed_m = guaranteed_m;
  out.guaranteed_scale = !m_override || static_cast<double>(*m_override) >= guaranteed_m;
  out.edges = std::move(edges);
  out.vertices = std::move(vertices);
  out.children = std::move(children);
  out.vertex_level = std::move(vertex_level);
  out.vertex_players = std::move(vertex_players);
  return out;
}

namespace {

constexpr Money kThresholdSlack = 1e-12;

struct GroupTest {
  bool good = false;
  GroupOrderSource source = GroupOrderSource::kGreedy;
  std::vector<PlayerId> ordering;  // full when good, peeled prefix otherwise
};

class GroupTester {
 public:
  GroupTester(const CostShareMethod& method, double beta) : method_(method), beta_(beta) {}

  Money threshold(std::size_t level, std::size_t l) const {
    return std::ldexp(1.0, -static_cast<int>(level)) / (4.0 * beta_ * static_cast<double>(l));
  }

  Money share(const PlayerSet& base, PlayerId i) const { return method_.shares(base.with(i))[i]; }

  GroupTest test(const PlayerSet& chosen, const std::vector<PlayerId>& group, std::size_t level) const {
    GroupTest out;
    PlayerSet prefix = chosen;
    std::vector<PlayerId> rest = group;
    while (!rest.empty()) {
      std::size_t pick = 0;
      Money best = -kInfinity;
      for (std::size_t b = 0; b < rest.size(); ++b) {
        const Money s = share(prefix, rest[b]);
        if (s > best) {
          best = s;
          pick = b;
        }
      }
      if (best < threshold(level, out.ordering.size() + 1) - kThresholdSlack) break;
      out.ordering.push_back(rest[pick]);
      prefix.insert(rest[pick]);
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    if (rest.empty()) {
      out.good = true;
      return out;
    }
    if (group.size() <= 4) {
      std::vector<PlayerId> order;
      if (search(chosen, group, level, order)) {
        out.good = true;
        out.source = GroupOrderSource::kExhaustive;
        out.ordering = order;
      }
    }
    return out;
  }

 private:
  bool search(const PlayerSet& prefix, const std::vector<PlayerId>& rest, std::size_t level,
              std::vector<PlayerId>& order) const {
    if (rest.empty()) return true;
    const Money need = threshold(level, order.size() + 1) - kThresholdSlack;
    for (std::size_t b = 0; b < rest.size(); ++b) {
      if (share(prefix, rest[b]) < need) continue;
      auto remaining = rest;
      remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(b));
      order.push_back(rest[b]);
      if (search(prefix.with(rest[b]), remaining, level, order)) return true;
      order.pop_back();
    }
    return false;
  }

  const CostShareMethod& method_;
  double beta_;
};

}  // namespace

GoodGroupSelection select_good_groups(const LowerBoundConstruction& construction,
                                      const CostShareMethod& method, const CostOracle& oracle) {
  const std::size_t n = construction.num_players();
  if (method.universe_size() != n || oracle.universe_size() != n) {
    throw InvalidInput("method and cost function must cover the construction's players");
  }
  const GroupTester tester(method, construction.beta);
  GoodGroupSelection out;
  out.selected = PlayerSet(n);
  out.all_good = true;
  std::set<VertexId> active{construction.instance.root()};

  auto commit = [&](std::size_t level, std::size_t parent, std::size_t index, VertexId vertex,
                    const GroupTest& test, std::size_t tested) {
    GroupChoice choice;
    choice.level = level;
    choice.parent_edge = parent;
    choice.group = index;
    choice.vertex = vertex;
    choice.good = test.good;
    choice.source = test.good ? test.source : GroupOrderSource::kFallback;
    choice.groups_tested = tested;
    choice.ordering = test.ordering;
    for (PlayerId i : construction.vertex_players[vertex]) {
      if (std::find(choice.ordering.begin(), choice.ordering.end(), i) == choice.ordering.end()) {
        choice.ordering.push_back(i);
      }
    }
    for (std::size_t l = 0; l < choice.ordering.size(); ++l) {
      const PlayerId i = choice.ordering[l];
      choice.shares.push_back(tester.share(out.selected, i));
      choice.thresholds.push_back(tester.threshold(level, l + 1));
      out.selected.insert(i);
      out.ordering.push_back(i);
    }
    out.all_good = out.all_good && choice.good;
    active.insert(vertex);
    out.choices.push_back(std::move(choice));
  };

  const VertexId far_end = construction.vertices[0][1];
  commit(0, kNoResource, 0, far_end,
         tester.test(out.selected, construction.vertex_players[far_end], 0), 1);
  out.level_sizes.push_back(out.selected.size());
  out.level_costs.push_back(oracle.evaluate(out.selected));

  for (std::size_t j = 1; j <= construction.levels; ++j) {
    const std::size_t before = out.selected.size();
    const auto& parents = construction.edges[j - 1];
    for (std::size_t e = 0; e < parents.size(); ++e) {
      if (!active.count(parents[e].u) || !active.count(parents[e].v)) continue;
      const auto& candidates = construction.children[j][e];
      std::optional<std::size_t> fallback;
      GroupTest fallback_test;
      bool done = false;
      for (std::size_t r = 0; r < candidates.size(); ++r) {
        GroupTest test =
            tester.test(out.selected, construction.vertex_players[candidates[r]], j);
        if (test.good) {
          commit(j, e, r, candidates[r], test, r + 1);
          done = true;
          break;
        }
        if (!fallback || test.ordering.size() > fallback_test.ordering.size()) {
          fallback = r;
          fallback_test = std::move(test);
        }
      }
      if (!done) commit(j, e, *fallback, candidates[*fallback], fallback_test, candidates.size());
    }
    out.level_sizes.push_back(out.selected.size() - before);
    out.level_costs.push_back(oracle.evaluate(out.selected));
  }

  out.sizes_ok = out.level_sizes[0] == construction.sqrt_k;
  for (std::size_t j = 1; j < out.level_sizes.size(); ++j) {
    out.sizes_ok = out.sizes_ok && out.level_sizes[j] == (std::size_t{1} << (j - 1)) * construction.sqrt_k;
  }
  out.costs_ok = std::all_of(out.level_costs.begin(), out.level_costs.end(),
                             [](Money c) { return std::abs(c - 1.0) <= 1e-9; });
  out.cost = out.level_costs.back();
  out.prefix_sum = summability_for(method, oracle, out.selected, out.ordering).value;
  out.bound = harmonic(construction.sqrt_k) / (4.0 * construction.beta) *
              (1.0 + static_cast<double>(construction.levels) / 2.0);
  return out;
}

}  // namespace costshare
