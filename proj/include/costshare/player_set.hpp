#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace costshare {

// Dense player index, 0..n-1 within one universe.
using PlayerId = std::size_t;

// A subset of a fixed universe of players.
class PlayerSet {
 public:
  PlayerSet() = default;
  explicit PlayerSet(std::size_t universe_size) : bits_(universe_size) {}

  static PlayerSet full(std::size_t universe_size);
  static PlayerSet from_mask(std::size_t universe_size, std::uint64_t mask);
  static PlayerSet of(std::size_t universe_size, std::span<const PlayerId> members);
  static PlayerSet of(std::size_t universe_size, std::initializer_list<PlayerId> members) {
    return of(universe_size, std::span<const PlayerId>(members.begin(), members.size()));
  }

  std::size_t universe_size() const { return bits_.size(); }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  bool contains(PlayerId i) const { return i < bits_.size() && bits_.test(i); }

  PlayerSet& insert(PlayerId i);
  PlayerSet& erase(PlayerId i);
  PlayerSet with(PlayerId i) const { return PlayerSet(*this).insert(i); }
  PlayerSet without(PlayerId i) const { return PlayerSet(*this).erase(i); }

  bool is_subset_of(const PlayerSet& other) const;
  PlayerSet operator|(const PlayerSet& other) const;
  PlayerSet operator&(const PlayerSet& other) const;
  // Members of *this not in other.
  PlayerSet operator-(const PlayerSet& other) const;

  // Members in ascending order.
  std::vector<PlayerId> members() const;
  // Requires universe_size() <= 64.
  std::uint64_t to_mask() const;
  std::string to_string() const;

  template <typename F>
  void for_each(F&& f) const {
    for (auto i = bits_.find_first(); i != Bits::npos; i = bits_.find_next(i)) f(PlayerId{i});
  }

  friend bool operator==(const PlayerSet& a, const PlayerSet& b) { return a.bits_ == b.bits_; }
  friend bool operator<(const PlayerSet& a, const PlayerSet& b) {
    if (a.bits_.size() != b.bits_.size()) return a.bits_.size() < b.bits_.size();
    return a.bits_ < b.bits_;
  }

 private:
  using Bits = boost::dynamic_bitset<std::uint64_t>;
  Bits bits_;
};

// Calls f(subset) for every subset of `base` (including the empty set and
// `base` itself), in increasing order of the induced member mask.
template <typename F>
void for_each_subset(const PlayerSet& base, F&& f) {
  const auto members = base.members();
  const std::uint64_t count = std::uint64_t{1} << members.size();
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    PlayerSet subset(base.universe_size());
    for (std::size_t b = 0; b < members.size(); ++b) {
      if (mask >> b & 1U) subset.insert(members[b]);
    }
    f(subset);
  }
}

// Lexicographic comparison of sorted member lists; used for tie-breaking.
bool lexicographically_less(const PlayerSet& a, const PlayerSet& b);

}  // namespace costshare
