#pragma once

// Prefix-sum summability of a cost-share method: the sum over an ordering of
// S of chi(i_l, S_l), where S_l holds the first l players, relative to C(S).

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "costshare/core.hpp"

namespace costshare {

enum class SearchMode { kExhaustive, kRandom, kFixed };
std::string to_string(SearchMode mode);

struct SummabilityReport {
  Money value = 0.0;  // prefix sum
  Money cost = 0.0;   // C(S)
  double ratio = 0.0;
  PlayerSet set;
  std::vector<PlayerId> ordering;
  std::vector<Money> prefix_shares;  // chi(i_l, S_l) for each l
  SearchMode mode = SearchMode::kFixed;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
};

// value / cost, with 0 when both vanish and +inf when only the cost does.
double summability_ratio(Money value, Money cost);

// Throws InvalidInput unless `ordering` is a permutation of `s`.
SummabilityReport summability_for(const CostShareMethod& method, const CostOracle& oracle,
                                  const PlayerSet& s, const std::vector<PlayerId>& ordering);

struct SummabilitySearch {
  SearchMode mode = SearchMode::kExhaustive;
  std::size_t trials = 1000;  // random mode
  std::uint64_t seed = 0;     // random mode
  std::size_t workers = 1;    // exhaustive mode share evaluation
  PlayerSet fixed_set;        // fixed mode
  std::vector<PlayerId> fixed_ordering;
  Caps caps;
};

// Exhaustive mode maximizes over every S and ordering (|U| <= caps.orderings).
// Random mode takes the best of seeded (S, ordering) draws, each also tried
// with the greedy ordering that always appends the player with the largest
// share given the current prefix, and the greedy ordering of U itself.
SummabilityReport worst_summability(const CostShareMethod& method, const CostOracle& oracle,
                                    const SummabilitySearch& search = {});

// Greedy ordering of s described above.
std::vector<PlayerId> greedy_ordering(const CostShareMethod& method, const PlayerSet& s);

struct ExpectedSummability {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

// Mean ratio over uniformly random orderings of s.
ExpectedSummability random_order_expected_summability(const CostShareMethod& method,
                                                      const CostOracle& oracle, const PlayerSet& s,
                                                      std::size_t trials, std::uint64_t seed);

}  // namespace costshare
