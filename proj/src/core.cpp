#include "costshare/core.hpp"

#include <algorithm>
#include <sstream>

namespace costshare {

// ---------------------------------------------------------------------------
// PlayerSet

PlayerSet PlayerSet::full(std::size_t universe_size) {
  PlayerSet s(universe_size);
  s.bits_.set();
  return s;
}

PlayerSet PlayerSet::from_mask(std::size_t universe_size, std::uint64_t mask) {
  if (universe_size < 64 && (mask >> universe_size) != 0) {
    throw InvalidInput("mask has bits outside a universe of " + std::to_string(universe_size));
  }
  PlayerSet s(universe_size);
  for (std::size_t i = 0; i < universe_size && i < 64; ++i) {
    if (mask >> i & 1U) s.bits_.set(i);
  }
  return s;
}

PlayerSet PlayerSet::of(std::size_t universe_size, std::span<const PlayerId> members) {
  PlayerSet s(universe_size);
  for (PlayerId i : members) s.insert(i);
  return s;
}

PlayerSet& PlayerSet::insert(PlayerId i) {
  if (i >= bits_.size()) {
    throw InvalidInput("player " + std::to_string(i) + " outside a universe of " +
                       std::to_string(bits_.size()));
  }
  bits_.set(i);
  return *this;
}

PlayerSet& PlayerSet::erase(PlayerId i) {
  if (i < bits_.size()) bits_.reset(i);
  return *this;
}

bool PlayerSet::is_subset_of(const PlayerSet& other) const {
  if (other.universe_size() != universe_size()) return false;
  return bits_.is_subset_of(other.bits_);
}

namespace {
void require_same_universe(const PlayerSet& a, const PlayerSet& b) {
  if (a.universe_size() != b.universe_size()) {
    throw InvalidInput("player sets over different universes");
  }
}
}  // namespace

PlayerSet PlayerSet::operator|(const PlayerSet& other) const {
  require_same_universe(*this, other);
  PlayerSet r = *this;
  r.bits_ |= other.bits_;
  return r;
}

PlayerSet PlayerSet::operator&(const PlayerSet& other) const {
  require_same_universe(*this, other);
  PlayerSet r = *this;
  r.bits_ &= other.bits_;
  return r;
}

PlayerSet PlayerSet::operator-(const PlayerSet& other) const {
  require_same_universe(*this, other);
  PlayerSet r = *this;
  r.bits_ -= other.bits_;
  return r;
}

std::vector<PlayerId> PlayerSet::members() const {
  std::vector<PlayerId> out;
  out.reserve(size());
  for_each([&](PlayerId i) { out.push_back(i); });
  return out;
}

std::uint64_t PlayerSet::to_mask() const {
  if (universe_size() > 64) throw CapacityError("mask form needs a universe of at most 64");
  std::uint64_t mask = 0;
  for_each([&](PlayerId i) { mask |= std::uint64_t{1} << i; });
  return mask;
}

std::string PlayerSet::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for_each([&](PlayerId i) {
    if (!first) os << ',';
    os << i;
    first = false;
  });
  os << '}';
  return os.str();
}

bool lexicographically_less(const PlayerSet& a, const PlayerSet& b) {
  const auto ma = a.members();
  const auto mb = b.members();
  return std::lexicographical_compare(ma.begin(), ma.end(), mb.begin(), mb.end());
}

// ---------------------------------------------------------------------------
// Names

std::string to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kFacilityLocation: return "facility-location";
    case ProblemKind::kSteinerTree: return "steiner";
    case ProblemKind::kRentOrBuy: return "ssrob";
    case ProblemKind::kSetCover: return "set-cover";
    case ProblemKind::kCustom: return "custom";
  }
  return "unknown";
}

std::string to_string(MethodKind kind) {
  switch (kind) {
    case MethodKind::kPalTardos: return "pt";
    case MethodKind::kJainVazirani: return "jv";
    case MethodKind::kGst: return "gst";
    case MethodKind::kCustom: return "custom";
  }
  return "unknown";
}

std::string to_string(TraceKind kind) {
  switch (kind) {
    case TraceKind::kRemoved: return "removed";
    case TraceKind::kDeleted: return "deleted";
    case TraceKind::kMarked: return "marked";
    case TraceKind::kSetBought: return "set_bought";
    case TraceKind::kFacilityOpened: return "facility_opened";
    case TraceKind::kConnected: return "connected";
    case TraceKind::kServed: return "served";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Methods and outcomes

Money CostShareMethod::share(PlayerId i, const PlayerSet& s) const {
  if (!s.contains(i)) {
    throw InvalidInput("cost share requested for player " + std::to_string(i) +
                       " outside the set " + s.to_string());
  }
  return shares(s)[i];
}

std::vector<Money> FunctionCostShareMethod::shares(const PlayerSet& s) const {
  std::vector<Money> out(universe_size_, 0.0);
  s.for_each([&](PlayerId i) { out[i] = fn_(i, s); });
  return out;
}

Money MechanismOutcome::revenue() const {
  Money total = 0.0;
  served.for_each([&](PlayerId i) { total += prices[i]; });
  return total;
}

bool is_individually_rational(const MechanismOutcome& outcome, const BidProfile& bids) {
  if (outcome.prices.size() != bids.size()) return false;
  for (PlayerId i = 0; i < bids.size(); ++i) {
    const Money p = outcome.prices[i];
    if (!outcome.served.contains(i)) {
      if (p != 0.0) return false;
    } else if (p < -kEps || p > bids[i] + kEps) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Metrics

namespace {
void require_universe(const CostOracle& oracle, const PlayerSet& s,
                      const ValuationProfile& valuations) {
  if (s.universe_size() != oracle.universe_size()) {
    throw InvalidInput("served set is over a universe of " + std::to_string(s.universe_size()) +
                       " players; the cost function has " + std::to_string(oracle.universe_size()));
  }
  if (valuations.size() != oracle.universe_size()) {
    throw InvalidInput("valuation profile size does not match the universe");
  }
}
}  // namespace

Money social_cost(const CostOracle& oracle, const ValuationProfile& valuations,
                  const PlayerSet& served, std::optional<Money> incurred) {
  require_universe(oracle, served, valuations);
  const Money service = incurred ? *incurred : oracle.evaluate(served);
  return service + valuations.sum_over(PlayerSet::full(served.universe_size()) - served);
}

Money social_welfare(const CostOracle& oracle, const ValuationProfile& valuations,
                     const PlayerSet& served) {
  require_universe(oracle, served, valuations);
  return valuations.sum_over(served) - oracle.evaluate(served);
}

OptimalSocialCost optimal_social_cost(const CostOracle& oracle, const ValuationProfile& valuations,
                                      const Caps& caps) {
  const std::size_t n = oracle.universe_size();
  if (n > caps.subsets) {
    throw CapacityError("optimal social cost enumerates 2^" + std::to_string(n) +
                        " subsets; cap is 2^" + std::to_string(caps.subsets));
  }
  if (valuations.size() != n) throw InvalidInput("valuation profile size does not match the universe");
  OptimalSocialCost best{kInfinity, PlayerSet(n)};
  for_each_subset(PlayerSet::full(n), [&](const PlayerSet& s) {
    const Money cost = social_cost(oracle, valuations, s);
    const bool better =
        cost < best.cost - kEps ||
        (cost <= best.cost + kEps &&
         (s.size() < best.witness.size() ||
          (s.size() == best.witness.size() && lexicographically_less(s, best.witness))));
    if (best.cost == kInfinity || better) best = {cost, s};
  });
  return best;
}

BudgetBalanceCheck budget_balance_ratio(const CostShareMethod& method, const CostOracle& oracle,
                                        const PlayerSet& s, double beta, Money tolerance) {
  if (s.empty()) throw InvalidInput("budget-balance ratio is undefined for the empty set");
  BudgetBalanceCheck out;
  const auto shares = method.shares(s);
  s.for_each([&](PlayerId i) { out.sum += shares[i]; });
  out.cost = oracle.evaluate(s);
  out.lower_ok = out.cost / beta <= out.sum + tolerance;
  out.upper_ok = out.sum <= out.cost + tolerance;
  return out;
}

std::vector<CoreViolation> check_price_core(std::span<const Money> prices, const CostOracle& oracle,
                                            const PlayerSet& served, const Caps& caps) {
  if (served.size() > caps.subsets) {
    throw CapacityError("core check over " + std::to_string(served.size()) +
                        " players exceeds the subset cap");
  }
  std::vector<CoreViolation> out;
  for_each_subset(served, [&](const PlayerSet& sub) {
    if (sub.empty()) return;
    Money paid = 0.0;
    sub.for_each([&](PlayerId i) { paid += prices[i]; });
    const Money cost = oracle.evaluate(sub);
    if (paid > cost + kEps) out.push_back({sub, paid, cost});
  });
  return out;
}

std::vector<CoreViolation> check_core(const CostShareMethod& method, const CostOracle& oracle,
                                      const PlayerSet& s, const Caps& caps) {
  const auto shares = method.shares(s);
  return check_price_core(shares, oracle, s, caps);
}

std::vector<CrossMonotonicViolation> check_cross_monotonic(const CostShareMethod& method,
                                                           std::size_t cap) {
  const std::size_t n = method.universe_size();
  if (n > cap) {
    throw CapacityError("cross-monotonicity check over " + std::to_string(n) +
                        " players exceeds the cap of " + std::to_string(cap));
  }
  std::vector<CrossMonotonicViolation> out;
  for_each_subset(PlayerSet::full(n), [&](const PlayerSet& s) {
    if (s.empty()) return;
    const auto small = method.shares(s);
    for (PlayerId j = 0; j < n; ++j) {
      if (s.contains(j)) continue;
      const PlayerSet t = s.with(j);
      const auto large = method.shares(t);
      s.for_each([&](PlayerId i) {
        if (small[i] < large[i] - kEps) out.push_back({i, s, t, small[i], large[i]});
      });
    }
  });
  return out;
}

double harmonic(std::size_t k) {
  if (k == 0) throw InvalidInput("harmonic number needs k >= 1");
  double h = 0.0;
  for (std::size_t l = 1; l <= k; ++l) h += 1.0 / static_cast<double>(l);
  return h;
}

}  // namespace costshare
