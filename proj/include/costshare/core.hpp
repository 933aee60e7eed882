#pragma once

// Shared domain model: money profiles, cost functions, cost-sharing methods,
// mechanism outcomes and the metrics every mechanism is judged by.

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "costshare/errors.hpp"
#include "costshare/player_set.hpp"

namespace costshare {

using Money = double;

// Comparison tolerance for every sandwich, violation and tie check.
inline constexpr Money kEps = 1e-9;
inline constexpr Money kInfinity = std::numeric_limits<Money>::infinity();

// Enumeration limits. Every exhaustive routine checks the relevant field and
// throws CapacityError rather than running away.
struct Caps {
  std::size_t subsets = 16;              // players in a 2^n subset enumeration
  std::size_t orderings = 8;             // players in an exhaustive ordering search
  std::size_t facilities = 16;           // facilities in the exact facility-location oracle
  std::size_t steiner_terminals = 12;    // distinct terminals (incl. root) in Dreyfus-Wagner
  std::size_t rent_or_buy_vertices = 12; // vertices in the exact rent-or-buy oracle
  std::size_t cover_sets = 16;           // sets in the exact set-cover oracle
  std::size_t gst_exact_players = 12;    // |S| for the exact sampling expectation
  std::size_t incentive_players = 4;     // players in the brute-force incentive checks
  std::size_t lower_bound_players = 4096;
};

struct ValuationTag {
  static constexpr bool allow_infinite = false;
  static constexpr const char* name = "valuation";
};
struct BidTag {
  static constexpr bool allow_infinite = true;
  static constexpr const char* name = "bid";
};

// One nonnegative amount per player of a universe.
template <typename Tag>
class MoneyProfile {
 public:
  MoneyProfile() = default;
  explicit MoneyProfile(std::vector<Money> values) : values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
      const Money v = values_[i];
      if (!(v >= 0.0) || (!Tag::allow_infinite && std::isinf(v))) {
        throw InvalidInput(std::string(Tag::name) + " of player " + std::to_string(i) +
                           " must be a nonnegative number");
      }
    }
  }
  static MoneyProfile uniform(std::size_t n, Money value) {
    return MoneyProfile(std::vector<Money>(n, value));
  }

  std::size_t size() const { return values_.size(); }
  Money operator[](PlayerId i) const { return values_.at(i); }
  const std::vector<Money>& values() const { return values_; }
  MoneyProfile with(PlayerId i, Money v) const {
    auto copy = values_;
    copy.at(i) = v;
    return MoneyProfile(std::move(copy));
  }
  Money sum_over(const PlayerSet& s) const {
    Money total = 0.0;
    s.for_each([&](PlayerId i) { total += values_.at(i); });
    return total;
  }

  friend bool operator==(const MoneyProfile&, const MoneyProfile&) = default;

 private:
  std::vector<Money> values_;
};

using ValuationProfile = MoneyProfile<ValuationTag>;
using BidProfile = MoneyProfile<BidTag>;

inline BidProfile truthful_bids(const ValuationProfile& valuations) {
  return BidProfile(valuations.values());
}

enum class ProblemKind { kFacilityLocation, kSteinerTree, kRentOrBuy, kSetCover, kCustom };
std::string to_string(ProblemKind kind);

// C(S): nonnegative, nondecreasing, C(empty) = 0.
class CostOracle {
 public:
  virtual ~CostOracle() = default;
  virtual std::size_t universe_size() const = 0;
  virtual ProblemKind kind() const = 0;
  virtual Money evaluate(const PlayerSet& s) const = 0;
};

class FunctionCostOracle final : public CostOracle {
 public:
  FunctionCostOracle(std::size_t universe_size, std::function<Money(const PlayerSet&)> cost)
      : universe_size_(universe_size), cost_(std::move(cost)) {}
  std::size_t universe_size() const override { return universe_size_; }
  ProblemKind kind() const override { return ProblemKind::kCustom; }
  Money evaluate(const PlayerSet& s) const override { return s.empty() ? 0.0 : cost_(s); }

 private:
  std::size_t universe_size_;
  std::function<Money(const PlayerSet&)> cost_;
};

enum class MethodKind { kPalTardos, kJainVazirani, kGst, kCustom };
std::string to_string(MethodKind kind);

// chi(i, S) for i in S.
class CostShareMethod {
 public:
  virtual ~CostShareMethod() = default;
  virtual std::size_t universe_size() const = 0;
  virtual MethodKind kind() const = 0;
  // One entry per universe player; entries outside s are zero.
  virtual std::vector<Money> shares(const PlayerSet& s) const = 0;

  // Throws InvalidInput when i is not in s.
  Money share(PlayerId i, const PlayerSet& s) const;
};

class FunctionCostShareMethod final : public CostShareMethod {
 public:
  using ShareFn = std::function<Money(PlayerId, const PlayerSet&)>;
  FunctionCostShareMethod(std::size_t universe_size, ShareFn fn)
      : universe_size_(universe_size), fn_(std::move(fn)) {}
  std::size_t universe_size() const override { return universe_size_; }
  MethodKind kind() const override { return MethodKind::kCustom; }
  std::vector<Money> shares(const PlayerSet& s) const override;

 private:
  std::size_t universe_size_;
  ShareFn fn_;
};

enum class TraceKind {
  kRemoved,         // Moulin: share exceeded bid
  kDeleted,         // DMV: offer exceeded bid
  kMarked,          // DMV set cover: player accepted and was covered
  kSetBought,       // DMV set cover
  kFacilityOpened,  // DMV facility location
  kConnected,       // DMV facility location
  kServed,          // final price of a served player
};
std::string to_string(TraceKind kind);

inline constexpr std::size_t kNoResource = static_cast<std::size_t>(-1);

struct TraceEvent {
  TraceKind kind;
  std::size_t step = 0;                 // iteration index
  double time = 0.0;                    // clock value for event-driven processes
  PlayerId player = 0;                  // ignored for kSetBought / kFacilityOpened
  std::size_t resource = kNoResource;   // set or facility id, when relevant
  Money amount = 0.0;                   // share, offer or price involved
  Money bid = 0.0;
};

struct MechanismOutcome {
  PlayerSet served;
  std::vector<Money> prices;  // one per universe player
  Money incurred_cost = 0.0;  // C'(S)
  std::vector<TraceEvent> trace;

  Money revenue() const;
};

// p_i = 0 off S and 0 <= p_i <= b_i on S (within kEps).
bool is_individually_rational(const MechanismOutcome& outcome, const BidProfile& bids);

// pi(S) = C(S) (or the incurred cost when given) + sum of excluded valuations.
Money social_cost(const CostOracle& oracle, const ValuationProfile& valuations,
                  const PlayerSet& served, std::optional<Money> incurred = std::nullopt);

// W(S) = sum of served valuations - C(S).
Money social_welfare(const CostOracle& oracle, const ValuationProfile& valuations,
                     const PlayerSet& served);

struct OptimalSocialCost {
  Money cost = 0.0;
  PlayerSet witness;
};

// Exact minimum over all 2^n subsets. Ties go to the smaller subset, then to
// the lexicographically smaller member list.
OptimalSocialCost optimal_social_cost(const CostOracle& oracle, const ValuationProfile& valuations,
                                      const Caps& caps = {});

struct BudgetBalanceCheck {
  Money sum = 0.0;
  Money cost = 0.0;
  bool lower_ok = false;  // C(S)/beta <= sum
  bool upper_ok = false;  // sum <= C(S)
};

BudgetBalanceCheck budget_balance_ratio(const CostShareMethod& method, const CostOracle& oracle,
                                        const PlayerSet& s, double beta, Money tolerance = kEps);

struct CoreViolation {
  PlayerSet coalition;
  Money paid = 0.0;
  Money cost = 0.0;
};

// Subsets S' of s whose members' shares chi(., s) exceed C(S').
std::vector<CoreViolation> check_core(const CostShareMethod& method, const CostOracle& oracle,
                                      const PlayerSet& s, const Caps& caps = {});

// Same check for a fixed price vector charged to `served`.
std::vector<CoreViolation> check_price_core(std::span<const Money> prices, const CostOracle& oracle,
                                            const PlayerSet& served, const Caps& caps = {});

struct CrossMonotonicViolation {
  PlayerId player = 0;
  PlayerSet smaller;
  PlayerSet larger;
  Money share_in_smaller = 0.0;
  Money share_in_larger = 0.0;
};

// Checks chi(i, S) >= chi(i, S + j) for every S, i in S and j not in S. By
// transitivity this is equivalent to the full S subset-of T condition.
std::vector<CrossMonotonicViolation> check_cross_monotonic(const CostShareMethod& method,
                                                           std::size_t cap = 8);

// H_k = 1 + 1/2 + ... + 1/k.
double harmonic(std::size_t k);

}  // namespace costshare
