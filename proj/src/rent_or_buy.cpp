#include "costshare/rent_or_buy.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

namespace costshare {

RentOrBuyInstance::RentOrBuyInstance(SteinerInstance network, double buy_multiplier)
    : network_(std::move(network)), buy_multiplier_(buy_multiplier) {
  if (!(buy_multiplier_ >= 1.0) || std::isinf(buy_multiplier_)) {
    throw InvalidInput("rent-or-buy multiplier M must be a finite number >= 1");
  }
}

RentOrBuyCost::RentOrBuyCost(RentOrBuyInstance instance, const Caps& caps)
    : instance_(std::move(instance)) {
  const SteinerInstance& net = instance_.network();
  if (net.num_vertices() > caps.rent_or_buy_vertices) {
    throw CapacityError("exact rent-or-buy oracle over " + std::to_string(net.num_vertices()) +
                        " vertices exceeds the cap of " + std::to_string(caps.rent_or_buy_vertices));
  }
  std::vector<VertexId> terminals{net.root()};
  for (VertexId v = 0; v < net.num_vertices(); ++v) {
    if (v != net.root()) {
      terminals.push_back(v);
      non_root_.push_back(v);
    }
  }
  DreyfusWagnerTable table(net.closure(), terminals);
  tree_cost_.resize(std::size_t{1} << non_root_.size());
  for (std::uint64_t mask = 0; mask < tree_cost_.size(); ++mask) tree_cost_[mask] = table.tree_cost(mask);
}

Money RentOrBuyCost::evaluate(const PlayerSet& s) const {
  if (s.universe_size() != instance_.num_players()) {
    throw InvalidInput("player set does not match the rent-or-buy universe");
  }
  if (s.empty()) return 0.0;
  const SteinerInstance& net = instance_.network();
  std::vector<VertexId> hosts;
  s.for_each([&](PlayerId i) { hosts.push_back(net.host(i)); });
  const double m = instance_.buy_multiplier();
  Money best = kInfinity;
  for (std::uint64_t mask = 0; mask < tree_cost_.size(); ++mask) {
    Money cost = m * tree_cost_[mask];
    if (cost >= best) continue;
    for (VertexId h : hosts) {
      Money nearest = net.distance(h, net.root());
      for (std::size_t b = 0; b < non_root_.size(); ++b) {
        if (mask >> b & 1U) nearest = std::min(nearest, net.distance(h, non_root_[b]));
      }
      cost += nearest;
      if (cost >= best) break;
    }
    best = std::min(best, cost);
  }
  return best;
}

Money ssrob_optimal_cost(const RentOrBuyInstance& instance, const PlayerSet& s, const Caps& caps) {
  return RentOrBuyCost(instance, caps).evaluate(s);
}

namespace {

Money distance_to_sample(const SteinerInstance& net, VertexId from,
                         const std::vector<VertexId>& sample_hosts) {
  Money nearest = net.distance(from, net.root());
  for (VertexId h : sample_hosts) nearest = std::min(nearest, net.distance(from, h));
  return nearest;
}

GstShareBreakdown empty_breakdown(std::size_t n, GstMode mode) {
  GstShareBreakdown out;
  out.buy.assign(n, 0.0);
  out.rent.assign(n, 0.0);
  out.total.assign(n, 0.0);
  out.std_error.assign(n, 0.0);
  out.mode = mode;
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform [0, 1) draw for member b of sample k.
double counter_uniform(std::uint64_t seed, std::uint64_t sample, std::uint64_t member) {
  const std::uint64_t x = splitmix64(splitmix64(seed ^ splitmix64(sample)) + member);
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

}  // namespace

GstShareBreakdown gst_shares_exact(const RentOrBuyInstance& instance, const PlayerSet& s,
                                   const Caps& caps) {
  const std::size_t n = instance.num_players();
  if (s.universe_size() != n) throw InvalidInput("player set does not match the rent-or-buy universe");
  if (s.size() > caps.gst_exact_players) {
    throw CapacityError("exact GST shares enumerate 2^" + std::to_string(s.size()) +
                        " samples; cap is 2^" + std::to_string(caps.gst_exact_players) +
                        " (use Monte Carlo)");
  }
  GstShareBreakdown out = empty_breakdown(n, GstMode::kExact);
  const SteinerInstance& net = instance.network();
  const double m = instance.buy_multiplier();
  const double p = 1.0 / m;
  const auto members = s.members();
  const std::uint64_t count = std::uint64_t{1} << members.size();
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    double weight = 1.0;
    PlayerSet sample(n);
    std::vector<VertexId> sample_hosts;
    for (std::size_t b = 0; b < members.size(); ++b) {
      if (mask >> b & 1U) {
        weight *= p;
        sample.insert(members[b]);
        sample_hosts.push_back(net.host(members[b]));
      } else {
        weight *= 1.0 - p;
      }
    }
    if (weight == 0.0) continue;
    std::vector<Money> jv;
    if (!sample.empty()) jv = jv_cost_shares(net, sample);
    for (PlayerId i : members) {
      if (sample.contains(i)) {
        out.buy[i] += weight * m * jv[i];
      } else {
        out.rent[i] += weight * distance_to_sample(net, net.host(i), sample_hosts);
      }
    }
  }
  for (PlayerId i : members) out.total[i] = out.buy[i] + out.rent[i];
  return out;
}

GstShareBreakdown gst_shares_mc(const RentOrBuyInstance& instance, const PlayerSet& s,
                                std::size_t samples, std::uint64_t seed, unsigned workers) {
  const std::size_t n = instance.num_players();
  if (s.universe_size() != n) throw InvalidInput("player set does not match the rent-or-buy universe");
  if (samples == 0) throw InvalidInput("Monte Carlo GST shares need at least one sample");
  GstShareBreakdown out = empty_breakdown(n, GstMode::kMonteCarlo);
  out.samples = samples;
  out.seed = seed;
  const SteinerInstance& net = instance.network();
  const double m = instance.buy_multiplier();
  const double p = 1.0 / m;
  const auto members = s.members();
  const std::size_t width = members.size();

  // Row k: conditional share of each member in draw k, with the buy part
  // flagged by a positive membership bit.
  std::vector<Money> value(samples * width, 0.0);
  std::vector<unsigned char> bought(samples * width, 0);
  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      PlayerSet sample(n);
      std::vector<VertexId> sample_hosts;
      for (std::size_t b = 0; b < width; ++b) {
        if (counter_uniform(seed, k, b) < p) {
          sample.insert(members[b]);
          sample_hosts.push_back(net.host(members[b]));
        }
      }
      std::vector<Money> jv;
      if (!sample.empty()) jv = jv_cost_shares(net, sample);
      for (std::size_t b = 0; b < width; ++b) {
        const PlayerId i = members[b];
        if (sample.contains(i)) {
          value[k * width + b] = m * jv[i];
          bought[k * width + b] = 1;
        } else {
          value[k * width + b] = distance_to_sample(net, net.host(i), sample_hosts);
        }
      }
    }
  };
  const unsigned threads = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(samples)));
  if (threads == 1) {
    run_range(0, samples);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (samples + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(samples, begin + chunk);
      if (begin < end) pool.emplace_back(run_range, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  // Sequential reduction in sample order (Welford).
  for (std::size_t b = 0; b < width; ++b) {
    const PlayerId i = members[b];
    double mean = 0.0, m2 = 0.0, buy = 0.0, rent = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
      const double x = value[k * width + b];
      (bought[k * width + b] ? buy : rent) += x;
      const double delta = x - mean;
      mean += delta / static_cast<double>(k + 1);
      m2 += delta * (x - mean);
    }
    out.buy[i] = buy / static_cast<double>(samples);
    out.rent[i] = rent / static_cast<double>(samples);
    out.total[i] = out.buy[i] + out.rent[i];
    out.std_error[i] =
        samples > 1 ? std::sqrt(m2 / static_cast<double>(samples - 1) / static_cast<double>(samples))
                    : 0.0;
  }
  return out;
}

GstShareBreakdown GstMethod::breakdown(const PlayerSet& s) const {
  if (options_.mode == GstMode::kExact) return gst_shares_exact(instance_, s, options_.caps);
  return gst_shares_mc(instance_, s, options_.samples, options_.seed, options_.workers);
}

std::vector<Money> GstMethod::shares(const PlayerSet& s) const {
  if (s.empty()) return std::vector<Money>(universe_size(), 0.0);
  GstShareBreakdown b = breakdown(s);
  switch (options_.component) {
    case GstComponent::kBuy: return std::move(b.buy);
    case GstComponent::kRent: return std::move(b.rent);
    case GstComponent::kTotal: break;
  }
  return std::move(b.total);
}

}  // namespace costshare
