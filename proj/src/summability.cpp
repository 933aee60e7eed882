#include "costshare/summability.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>

namespace costshare {

std::string to_string(SearchMode mode) {
  switch (mode) {
    case SearchMode::kExhaustive: return "exhaustive";
    case SearchMode::kRandom: return "random";
    case SearchMode::kFixed: return "fixed";
  }
  return "unknown";
}

double summability_ratio(Money value, Money cost) {
  if (std::abs(cost) <= kEps) return std::abs(value) <= kEps ? 0.0 : kInfinity;
  return value / cost;
}

SummabilityReport summability_for(const CostShareMethod& method, const CostOracle& oracle,
                                  const PlayerSet& s, const std::vector<PlayerId>& ordering) {
  if (s.universe_size() != method.universe_size()) {
    throw InvalidInput("player set does not match the method's universe");
  }
  if (ordering.size() != s.size()) {
    throw InvalidInput("ordering has " + std::to_string(ordering.size()) + " players; the set has " +
                       std::to_string(s.size()));
  }
  SummabilityReport report;
  report.set = s;
  report.ordering = ordering;
  PlayerSet prefix(s.universe_size());
  for (PlayerId i : ordering) {
    if (!s.contains(i) || prefix.contains(i)) {
      throw InvalidInput("ordering is not a permutation of " + s.to_string());
    }
    prefix.insert(i);
    const Money share = method.shares(prefix)[i];
    report.prefix_shares.push_back(share);
    report.value += share;
  }
  report.cost = oracle.evaluate(s);
  report.ratio = summability_ratio(report.value, report.cost);
  return report;
}

std::vector<PlayerId> greedy_ordering(const CostShareMethod& method, const PlayerSet& s) {
  std::vector<PlayerId> order;
  PlayerSet prefix(s.universe_size());
  PlayerSet rest = s;
  while (!rest.empty()) {
    PlayerId pick = 0;
    Money best = -kInfinity;
    rest.for_each([&](PlayerId i) {
      const Money share = method.shares(prefix.with(i))[i];
      if (share > best) {
        best = share;
        pick = i;
      }
    });
    order.push_back(pick);
    prefix.insert(pick);
    rest.erase(pick);
  }
  return order;
}

namespace {

bool better(const SummabilityReport& candidate, const SummabilityReport& incumbent) {
  return candidate.ratio > incumbent.ratio + kEps;
}

SummabilityReport exhaustive(const CostShareMethod& method, const CostOracle& oracle,
                             const SummabilitySearch& search) {
  const std::size_t n = method.universe_size();
  if (n > search.caps.orderings) {
    throw CapacityError("exhaustive summability over " + std::to_string(n) +
                        " players exceeds the ordering cap of " + std::to_string(search.caps.orderings));
  }
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<std::vector<Money>> shares(count);
  std::vector<Money> costs(count, 0.0);
  const std::size_t workers = std::max<std::size_t>(1, search.workers);
  auto fill = [&](std::size_t shard) {
    for (std::uint64_t mask = 1 + shard; mask < count; mask += workers) {
      const PlayerSet s = PlayerSet::from_mask(n, mask);
      shares[mask] = method.shares(s);
      costs[mask] = oracle.evaluate(s);
    }
  };
  if (workers == 1) {
    fill(0);
  } else {
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w) jobs.push_back(std::async(std::launch::async, fill, w));
    for (auto& job : jobs) job.get();
  }

  // best[S] = max over the last player i of chi(i, S) + best[S - i].
  std::vector<Money> best(count, 0.0);
  std::vector<std::uint8_t> last(count, 0);
  for (std::uint64_t mask = 1; mask < count; ++mask) {
    Money top = -kInfinity;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1U)) continue;
      const Money v = shares[mask][i] + best[mask & ~(std::uint64_t{1} << i)];
      if (v > top) {
        top = v;
        last[mask] = static_cast<std::uint8_t>(i);
      }
    }
    best[mask] = top;
  }

  std::uint64_t witness = 0;
  double witness_ratio = -kInfinity;
  for (std::uint64_t mask = 1; mask < count; ++mask) {
    const double r = summability_ratio(best[mask], costs[mask]);
    if (r > witness_ratio + kEps || witness == 0) {
      witness_ratio = r;
      witness = mask;
    }
  }
  std::vector<PlayerId> order;
  for (std::uint64_t mask = witness; mask != 0; mask &= ~(std::uint64_t{1} << last[mask])) {
    order.push_back(last[mask]);
  }
  std::reverse(order.begin(), order.end());
  SummabilityReport report = summability_for(method, oracle, PlayerSet::from_mask(n, witness), order);
  report.mode = SearchMode::kExhaustive;
  return report;
}

SummabilityReport random_search(const CostShareMethod& method, const CostOracle& oracle,
                                const SummabilitySearch& search) {
  const std::size_t n = method.universe_size();
  if (n == 0) throw InvalidInput("summability search needs at least one player");
  std::mt19937_64 rng(search.seed);
  SummabilityReport top = summability_for(method, oracle, PlayerSet::full(n),
                                          greedy_ordering(method, PlayerSet::full(n)));
  std::bernoulli_distribution coin(0.5);
  for (std::size_t t = 0; t < search.trials; ++t) {
    PlayerSet s(n);
    while (s.empty()) {
      for (PlayerId i = 0; i < n; ++i)
        if (coin(rng)) s.insert(i);
    }
    auto order = s.members();
    std::shuffle(order.begin(), order.end(), rng);
    auto drawn = summability_for(method, oracle, s, order);
    if (better(drawn, top)) top = std::move(drawn);
    auto greedy = summability_for(method, oracle, s, greedy_ordering(method, s));
    if (better(greedy, top)) top = std::move(greedy);
  }
  top.mode = SearchMode::kRandom;
  top.seed = search.seed;
  top.trials = search.trials;
  return top;
}

}  // namespace

SummabilityReport worst_summability(const CostShareMethod& method, const CostOracle& oracle,
                                    const SummabilitySearch& search) {
  if (method.universe_size() != oracle.universe_size()) {
    throw InvalidInput("cost-share method and cost function disagree on the universe size");
  }
  switch (search.mode) {
    case SearchMode::kExhaustive: return exhaustive(method, oracle, search);
    case SearchMode::kRandom: return random_search(method, oracle, search);
    case SearchMode::kFixed: {
      auto report = summability_for(method, oracle, search.fixed_set, search.fixed_ordering);
      report.mode = SearchMode::kFixed;
      return report;
    }
  }
  throw InternalError("unknown summability search mode");
}

ExpectedSummability random_order_expected_summability(const CostShareMethod& method,
                                                      const CostOracle& oracle, const PlayerSet& s,
                                                      std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw InvalidInput("expected summability needs at least one trial");
  if (s.empty()) throw InvalidInput("expected summability needs a nonempty set");
  std::mt19937_64 rng(seed);
  auto order = s.members();
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    std::shuffle(order.begin(), order.end(), rng);
    const double r = summability_for(method, oracle, s, order).ratio;
    const double delta = r - mean;
    mean += delta / static_cast<double>(t + 1);
    m2 += delta * (r - mean);
  }
  ExpectedSummability out{mean, 0.0, trials, seed};
  if (trials > 1) out.std_error = std::sqrt(m2 / static_cast<double>(trials - 1) / static_cast<double>(trials));
  return out;
}

}  // namespace costshare
