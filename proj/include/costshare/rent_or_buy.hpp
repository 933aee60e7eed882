#pragma once

// Single-sink rent-or-buy: instance model, exact desk-scale oracle and the
// sampling-based GST cost shares (exact expectation or Monte Carlo).

#include <cstddef>
#include <cstdint>
#include <vector>

#include "costshare/core.hpp"
#include "costshare/steiner.hpp"

namespace costshare {

// Capacity x on edge e costs c_e * min(x, M).
class RentOrBuyInstance {
 public:
  RentOrBuyInstance(SteinerInstance network, double buy_multiplier);

  const SteinerInstance& network() const { return network_; }
  double buy_multiplier() const { return buy_multiplier_; }
  std::size_t num_players() const { return network_.num_players(); }

  friend bool operator==(const RentOrBuyInstance&, const RentOrBuyInstance&) = default;

 private:
  SteinerInstance network_;
  double buy_multiplier_;
};

// Exact cost under the hub structure: min over vertex sets W containing the
// root of M * SteinerTree(W) + sum_i dist(i, W). Precomputes one
// Dreyfus-Wagner table over every vertex.
class RentOrBuyCost final : public CostOracle {
 public:
  explicit RentOrBuyCost(RentOrBuyInstance instance, const Caps& caps = {});
  std::size_t universe_size() const override { return instance_.num_players(); }
  ProblemKind kind() const override { return ProblemKind::kRentOrBuy; }
  Money evaluate(const PlayerSet& s) const override;

 private:
  RentOrBuyInstance instance_;
  std::vector<VertexId> non_root_;  // vertex of mask bit b
  std::vector<Money> tree_cost_;    // indexed by mask over non_root_
};

Money ssrob_optimal_cost(const RentOrBuyInstance& instance, const PlayerSet& s,
                         const Caps& caps = {});

enum class GstMode { kExact, kMonteCarlo };

struct GstShareBreakdown {
  std::vector<Money> buy;        // expectation over samples D containing the player
  std::vector<Money> rent;       // expectation over samples D excluding the player
  std::vector<Money> total;      // buy + rent
  std::vector<Money> std_error;  // Monte Carlo only; zeros in exact mode
  GstMode mode = GstMode::kExact;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

// Exact expectation over all 2^|S| samples D, each player of S joining D
// independently with probability 1/M. Conditional share of i: M times its
// Jain-Vazirani share in D when i is in D, else its distance to D + root.
GstShareBreakdown gst_shares_exact(const RentOrBuyInstance& instance, const PlayerSet& s,
                                   const Caps& caps = {});

// Sample mean over independent draws of D. Draw k depends only on (seed, k),
// so results do not depend on the number of workers.
GstShareBreakdown gst_shares_mc(const RentOrBuyInstance& instance, const PlayerSet& s,
                                std::size_t samples, std::uint64_t seed, unsigned workers = 1);

enum class GstComponent { kTotal, kBuy, kRent };

struct GstOptions {
  GstMode mode = GstMode::kExact;
  GstComponent component = GstComponent::kTotal;
  std::size_t samples = 20000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  Caps caps;
};

class GstMethod final : public CostShareMethod {
 public:
  GstMethod(RentOrBuyInstance instance, GstOptions options)
      : instance_(std::move(instance)), options_(options) {}
  std::size_t universe_size() const override { return instance_.num_players(); }
  MethodKind kind() const override { return MethodKind::kGst; }
  std::vector<Money> shares(const PlayerSet& s) const override;
  GstShareBreakdown breakdown(const PlayerSet& s) const;

 private:
  RentOrBuyInstance instance_;
  GstOptions options_;
};

inline GstMethod gst_method(const RentOrBuyInstance& instance, GstOptions options = {}) {
  return GstMethod(instance, options);
}

}  // namespace costshare
