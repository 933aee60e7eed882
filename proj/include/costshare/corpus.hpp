#pragma once

// Seeded random instance generators. Every generator is a pure function of
// its arguments, independent of the standard library's distributions.

#include <cstddef>
#include <cstdint>

#include "costshare/facility_location.hpp"
#include "costshare/rent_or_buy.hpp"
#include "costshare/set_cover.hpp"
#include "costshare/steiner.hpp"

namespace costshare {

class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed);
  std::uint64_t next();
  double uniform();                         // [0, 1)
  double uniform(double lo, double hi);     // [lo, hi)
  std::size_t below(std::size_t n);         // [0, n)
  bool chance(double p);

 private:
  std::uint64_t state_;
};

// Players and facilities at uniform points of the unit square (Euclidean
// metric, players first); opening costs uniform in [0.2, 2].
FacilityLocationInstance random_facility_location(std::uint64_t seed, std::size_t players,
                                                  std::size_t facilities);

// Connected graph on `vertices` nodes (random spanning tree plus extra edges
// with probability 0.3), costs uniform in [0.5, 3], root 0, players hosted on
// uniform non-root vertices.
SteinerInstance random_steiner(std::uint64_t seed, std::size_t vertices, std::size_t players);

// Random network as above with M drawn from {1, 1.5, 2, 3}.
RentOrBuyInstance random_rent_or_buy(std::uint64_t seed, std::size_t vertices, std::size_t players);

// `sets` random nonempty subsets with costs uniform in [0.5, 3]; elements left
// uncovered are added to a random set.
SetCoverInstance random_set_cover(std::uint64_t seed, std::size_t elements, std::size_t sets);

}  // namespace costshare
