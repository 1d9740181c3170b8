#pragma once

#include <map>
#include <optional>
#include <string>

#include "isopoly/dieudonne.hpp"
#include "isopoly/filisoc.hpp"

namespace isopoly {

// Family of Harder-Narasimhan polygons of the p-power torsion levels of a
// p-divisible group with coefficients: level i lives on [0, i*n], the limit
// on [0, n]. d and e record the rescaling data that pin the break-point
// lattices (1/(id))Z x (1/(ide))Z.
struct TorsionProfile {
  long n = 0;
  long d = 1;
  long e = 1;
  std::map<long, ConcavePolygon> levels;
  ConcavePolygon hn_limit;
};

// x -> (1/i) HN(H[p^i])(ix) on [0, n].
ConcavePolygon hn_renormalised(const TorsionProfile& profile, long level);

struct CheckReport {
  bool ok = true;
  std::string reason;
  std::optional<Rational> failing_x;
};

// Invariants of the torsion family: renormalised monotonicity on stored
// divisibility pairs, the limit below every level with shared end points,
// level-1 slopes within [0, 1], break points on the prescribed lattices, and
// non-increasing gaps along stored doubling chains.
CheckReport check_prop_2_8(const TorsionProfile& profile);

// HN(H[p]) <= Hdg(H).
CheckReport check_prop_2_14(const TorsionProfile& profile, const ConcavePolygon& hdg);

// Break points of newt lying on hdg; requires newt <= hdg.
std::vector<Point> detect_hodge_newton_reducible(const ConcavePolygon& newt,
                                                 const ConcavePolygon& hdg);

struct SplitResult {
  Point z;
  FilteredIsocrystalCx part1, part2;
  PolygonTriple before, after;  // the six part polygons
  bool identities_ok = false;   // parts equal the restriction / rest of the originals
  bool parts_wa = false;
};

// The splitting of a weakly admissible, Hodge-Newton-reducible object at a
// break point z of its Newton polygon lying on the Hodge polygon: the
// F-stable slot subset carrying the slopes before z, with the induced
// filtration, against the quotient. Verifies the six polygon identities and
// that z is a break point of the Harder-Narasimhan polygon.
SplitResult split_filtered_isocrystal(const FilteredIsocrystalCx& obj, const Point& z);

// z is a break point of the limit polygon and lies on the level-1 polygon.
bool corollary_3_4_precondition(const ConcavePolygon& hn_limit, const ConcavePolygon& hn_level1,
                                const Point& z);

// Canonical break points: the first after the slope-1 segment and the last
// before the slope-0 segment, when those segments exist. They satisfy the
// level-1 condition for every admissible torsion profile.
std::vector<Point> remark_3_5_points(const ConcavePolygon& hn_limit);

struct SimulationStep {
  long level = 0;
  Point z_i;
  Rational ht_g, deg_g;  // ht G_i = i d x_i, deg G_i = i d y_i
  bool on_level1 = false;
};

struct SimulationTrace {
  bool dualised = false;     // the dual-reduction branch was taken
  Point z1;                  // first break of HN(H[p]) at or after z
  Rational mu;               // last slope of HN(H[p]) before z1
  std::vector<SimulationStep> steps;
  std::vector<long> a_seq;   // ht G_{i+1} - ht G_i on consecutive stored levels
  bool a_nonincreasing = false;
  std::optional<long> i0;    // stabilization index
  bool conclusive = false;
  std::pair<Rational, Rational> answer;  // (ht H_1, dim H_1) = (d x, d y)
  std::string detail;
};

// Numeric bookkeeping of the break-point extraction: the points z_i, the
// heights/degrees of the groups G_i, the non-increasing increments a_i, the
// stabilization index, and the K_i height/degree identities. Inconclusive
// (never wrong) when the stored depth does not exhibit stabilization.
SimulationTrace prop_3_2_simulate(const TorsionProfile& profile, const Point& z);

// The full pipeline: detect reducibility at z on the object's polygons, run
// the split, and (when a torsion profile is supplied) discharge the
// corollary's precondition on the level-1 polygon.
SplitResult theorem_3_9(const FilteredIsocrystalCx& obj, const Point& z,
                        const TorsionProfile* profile = nullptr);
SplitResult theorem_3_9(const DieudonneLift& h, const Point& z,
                        const TorsionProfile* profile = nullptr);

struct PolarisedSplitResult {
  Point z, z_dual;
  bool middle_empty = false;  // z self-dual: two parts exchanged by duality
  std::optional<FilteredIsocrystalCx> part1, part2, part3;
  PolygonTriple poly1, poly2, poly3;
  bool duality_ok = false;    // part3 polygons are the duals of part1's
  bool middle_symmetric = false;
};

// Polarised three-part split at z and its mirror z^dual = (n - x, end - x + y);
// requires all three polygons symmetric.
PolarisedSplitResult corollary_3_11(const FilteredIsocrystalCx& obj, const Point& z);

}  // namespace isopoly
