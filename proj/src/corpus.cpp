#include "costshare/corpus.hpp"

#include <cmath>
#include <vector>

namespace costshare {

SeededRng::SeededRng(std::uint64_t seed) : state_(seed) {}

std::uint64_t SeededRng::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SeededRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SeededRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::size_t SeededRng::below(std::size_t n) {
  if (n == 0) throw InvalidInput("empty range");
  return static_cast<std::size_t>(next() % n);
}

bool SeededRng::chance(double p) { return uniform() < p; }

FacilityLocationInstance random_facility_location(std::uint64_t seed, std::size_t players,
                                                  std::size_t facilities) {
  if (facilities == 0) throw InvalidInput("at least one facility is required");
  SeededRng rng(seed);
  const std::size_t points = players + facilities;
  std::vector<std::pair<double, double>> xy(points);
  for (auto& p : xy) p = {rng.uniform(), rng.uniform()};
  DistanceMatrix metric(points);
  for (std::size_t a = 0; a < points; ++a) {
    for (std::size_t b = a + 1; b < points; ++b) {
      const double d = std::hypot(xy[a].first - xy[b].first, xy[a].second - xy[b].second);
      metric.at(a, b) = d;
      metric.at(b, a) = d;
    }
  }
  std::vector<Facility> fs;
  for (std::size_t q = 0; q < facilities; ++q) fs.push_back({players + q, rng.uniform(0.2, 2.0)});
  std::vector<std::size_t> hosts(players);
  for (std::size_t i = 0; i < players; ++i) hosts[i] = i;
  return FacilityLocationInstance(std::move(metric), std::move(fs), std::move(hosts));
}

namespace {

Graph random_graph(SeededRng& rng, std::size_t vertices) {
  Graph g{vertices, {}};
  std::vector<std::vector<bool>> present(vertices, std::vector<bool>(vertices, false));
  for (VertexId v = 1; v < vertices; ++v) {
    const VertexId u = rng.below(v);
    g.edges.push_back({u, v, rng.uniform(0.5, 3.0)});
    present[u][v] = true;
  }
  for (VertexId u = 0; u < vertices; ++u) {
    for (VertexId v = u + 1; v < vertices; ++v) {
      if (!present[u][v] && rng.chance(0.3)) g.edges.push_back({u, v, rng.uniform(0.5, 3.0)});
    }
  }
  return g;
}

}  // namespace

SteinerInstance random_steiner(std::uint64_t seed, std::size_t vertices, std::size_t players) {
  if (vertices < 2) throw InvalidInput("a Steiner instance needs at least two vertices");
  SeededRng rng(seed);
  Graph g = random_graph(rng, vertices);
  std::vector<VertexId> hosts(players);
  for (auto& h : hosts) h = 1 + rng.below(vertices - 1);
  return SteinerInstance(std::move(g), 0, std::move(hosts));
}

RentOrBuyInstance random_rent_or_buy(std::uint64_t seed, std::size_t vertices, std::size_t players) {
  static constexpr double kMultipliers[] = {1.0, 1.5, 2.0, 3.0};
  SeededRng rng(seed ^ 0x5bd1e995ULL);
  const double m = kMultipliers[rng.below(4)];
  return RentOrBuyInstance(random_steiner(seed, vertices, players), m);
}

SetCoverInstance random_set_cover(std::uint64_t seed, std::size_t elements, std::size_t sets) {
  if (elements == 0 || sets == 0) throw InvalidInput("set cover needs elements and sets");
  SeededRng rng(seed);
  std::vector<std::vector<bool>> member(sets, std::vector<bool>(elements, false));
  for (auto& row : member) {
    for (std::size_t e = 0; e < elements; ++e) row[e] = rng.chance(0.4);
    row[rng.below(elements)] = true;
  }
  for (std::size_t e = 0; e < elements; ++e) {
    bool covered = false;
    for (const auto& row : member) covered = covered || row[e];
    if (!covered) member[rng.below(sets)][e] = true;
  }
  std::vector<CoverSet> out;
  for (const auto& row : member) {
    CoverSet s;
    s.cost = rng.uniform(0.5, 3.0);
    for (std::size_t e = 0; e < elements; ++e)
      if (row[e]) s.members.push_back(e);
    out.push_back(std::move(s));
  }
  return SetCoverInstance(elements, std::move(out));
}

}  // namespace costshare
