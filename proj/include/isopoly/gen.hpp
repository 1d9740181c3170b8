#pragma once

#include <cstdint>

#include "isopoly/filisoc.hpp"
#include "isopoly/hnfilt.hpp"

namespace isopoly {

// splitmix64 stream; identical output on every platform, so seeded campaigns
// are byte-reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  long range(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  bool coin() { return next() & 1; }

  // Independent stream for instance k of a campaign.
  Rng fork(std::uint64_t k) const {
    Rng r(state_ ^ (0x632be59bd9b4e019ULL * (k + 1)));
    r.next();
    return r;
  }

 private:
  std::uint64_t state_;
};

struct GenOptions {
  long max_n = 6;
  long max_d = 4;
  long p = 3;
};

// Seeded weakly admissible instance (rejection-sampled over the standard
// family); mixes the coefficient shapes d = 1, unramified d = 2, ramified
// d = 2 and d = 4, and both fidelity tiers (tier A instances carry the
// subobject table computed from a tier B construction).
FilteredIsocrystalCx random_wa_instance(Rng& rng, const GenOptions& opts = {});

// Weakly admissible and Hodge-Newton reducible, with the designated break
// point returned alongside.
std::pair<FilteredIsocrystalCx, Point> random_reducible_instance(Rng& rng,
                                                                 const GenOptions& opts = {});

// All three polygons symmetric and reducible at the returned point.
std::pair<FilteredIsocrystalCx, Point> random_polarised_instance(Rng& rng,
                                                                 const GenOptions& opts = {});

// Torsion profile of the requested depth satisfying the family invariants,
// with a designated break point of the limit polygon lying on level 1.
std::pair<TorsionProfile, Point> random_torsion_profile(Rng& rng, long depth);

// Arbitrary concave polygon (any rational slopes and widths).
ConcavePolygon random_polygon(Rng& rng, long max_segments = 5);

// Convert a tier B instance to tier A, carrying the full subobject table.
FilteredIsocrystalCx project_to_tier_a(const FilteredIsocrystalCx& obj);

}  // namespace isopoly
