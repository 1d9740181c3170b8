#include "isopoly/hnfilt.hpp"

#include <algorithm>
#include <sstream>

namespace isopoly {

namespace {

// First abscissa where q(x) < p(x), over the union of vertices; checks p <= q.
std::optional<Rational> leq_witness(const ConcavePolygon& p, const ConcavePolygon& q) {
  if (p.domain_end() != q.domain_end()) return p.domain_end();
  if (p.end_value() != q.end_value()) return p.domain_end();
  std::vector<Rational> xs;
  for (const auto& v : p.vertices()) xs.push_back(v.x);
  for (const auto& v : q.vertices()) xs.push_back(v.x);
  std::sort(xs.begin(), xs.end());
  for (const auto& x : xs)
    if (q.eval(x) < p.eval(x)) return x;
  return std::nullopt;
}

bool lattice_point(const Rational& v, long denom) {
  return (v * Rational(denom)).is_integer();
}

Rational sup_gap(const ConcavePolygon& upper, const ConcavePolygon& lower) {
  Rational best = 0;
  for (const auto* poly : {&upper, &lower})
    for (const auto& v : poly->vertices()) {
      Rational g = upper.eval(v.x) - lower.eval(v.x);
      if (best < g) best = g;
    }
  return best;
}

}  // namespace

ConcavePolygon hn_renormalised(const TorsionProfile& profile, long level) {
  auto it = profile.levels.find(level);
  if (it == profile.levels.end())
    throw DomainError("torsion profile does not store level " + std::to_string(level));
  return rescale(it->second, level);
}

CheckReport check_prop_2_8(const TorsionProfile& profile) {
  CheckReport rep;
  auto fail = [&](const std::string& why, const Rational& x) {
    if (!rep.ok) return;  // keep the first failure
    rep.ok = false;
    rep.reason = why;
    rep.failing_x = x;
  };
  if (profile.hn_limit.domain_end() != Rational(profile.n)) {
    fail("limit polygon domain is not [0, n]", profile.hn_limit.domain_end());
    return rep;
  }
  const Rational end = profile.hn_limit.end_value();
  for (const auto& [i, poly] : profile.levels) {
    if (i < 1 || poly.domain_end() != Rational(i * profile.n)) {
      fail("level " + std::to_string(i) + " has the wrong domain", poly.domain_end());
      return rep;
    }
    for (const auto& v : poly.vertices())
      if (!lattice_point(v.x, i * profile.d) || !lattice_point(v.y, i * profile.d * profile.e)) {
        fail("level " + std::to_string(i) + " break point off the 1/(id)Z x 1/(ide)Z lattice",
             v.x);
        return rep;
      }
  }
  // level-1 slopes within [0, 1]
  auto it1 = profile.levels.find(1);
  if (it1 != profile.levels.end()) {
    const auto& verts = it1->second.vertices();
    for (std::size_t k = 1; k < verts.size(); ++k) {
      Rational s = (verts[k].y - verts[k - 1].y) / (verts[k].x - verts[k - 1].x);
      if (s < Rational(0) || Rational(1) < s) {
        fail("level-1 slope escapes [0, 1]", verts[k - 1].x);
        return rep;
      }
    }
  }
  // renormalised monotonicity on stored divisibility pairs, limit below all
  for (const auto& [i, unused_i] : profile.levels) {
    ConcavePolygon ri = hn_renormalised(profile, i);
    if (ri.end_value() != end) {
      fail("level " + std::to_string(i) + " end value differs from the limit",
           ri.domain_end());
      return rep;
    }
    if (auto w = leq_witness(profile.hn_limit, ri)) {
      fail("limit polygon exceeds level " + std::to_string(i), *w);
      return rep;
    }
    for (const auto& [j, unused_j] : profile.levels) {
      if (j <= i || j % i != 0) continue;
      if (auto w = leq_witness(hn_renormalised(profile, j), ri)) {
        fail("renormalised level " + std::to_string(j) + " exceeds level " + std::to_string(i),
             *w);
        return rep;
      }
    }
  }
  // sup-gap non-increasing along stored doubling chains
  for (const auto& [i, unused] : profile.levels) {
    if (profile.levels.count(2 * i) == 0) continue;
    Rational g1 = sup_gap(hn_renormalised(profile, i), profile.hn_limit);
    Rational g2 = sup_gap(hn_renormalised(profile, 2 * i), profile.hn_limit);
    if (g1 < g2) {
      fail("gap to the limit grows from level " + std::to_string(i) + " to " +
               std::to_string(2 * i),
           Rational(i));
      return rep;
    }
  }
  return rep;
}

CheckReport check_prop_2_14(const TorsionProfile& profile, const ConcavePolygon& hdg) {
  CheckReport rep;
  auto it = profile.levels.find(1);
  if (it == profile.levels.end()) {
    rep.ok = false;
    rep.reason = "torsion profile does not store level 1";
    return rep;
  }
  if (auto w = leq_witness(it->second, hdg)) {
    rep.ok = false;
    rep.reason = "HN(H[p]) exceeds Hdg(H)";
    rep.failing_x = *w;
  }
  return rep;
}

std::vector<Point> detect_hodge_newton_reducible(const ConcavePolygon& newt,
                                                 const ConcavePolygon& hdg) {
  if (!leq(newt, hdg))
    throw DomainError("Newton polygon does not lie below the Hodge polygon");
  std::vector<Point> out;
  for (const auto& z : newt.break_points())
    if (hdg.lies_on(z)) out.push_back(z);
  return out;
}

SplitResult split_filtered_isocrystal(const FilteredIsocrystalCx& obj, const Point& z) {
  if (!is_weakly_admissible(obj).wa())
    throw DomainError("split requires a weakly admissible object");
  ConcavePolygon newt = newt_cx(obj);
  ConcavePolygon hdg = hodge_cx(obj);
  if (!newt.is_break_point(z) || !hdg.lies_on(z))
    throw DomainError("object is not Hodge-Newton reducible at the given point");
  SplitResult res;
  res.z = z;
  // Slots whose phi-cycle slope sits strictly before the break.
  Rational threshold = -newt.slope_after(z.x);
  std::vector<long> part1;
  for (long j = 0; j < obj.height(); ++j) {
    long cur = j, len = 0, sum = 0;
    do {
      sum += obj.isoc.exponents[cur];
      cur = obj.isoc.perm[cur];
      ++len;
    } while (cur != j);
    if (Rational(sum, len) < threshold) part1.push_back(j);
  }
  if (Rational(static_cast<long>(part1.size())) != z.x * Rational(obj.coeff.d))
    throw DomainError("break point height does not match the slope decomposition");
  res.part1 = sub_object(obj, part1);
  res.part2 = quotient_object(obj, part1);

  res.before.newt = newt_cx(res.part1);
  res.before.hdg = hodge_cx(res.part1);
  res.after.newt = newt_cx(res.part2);
  res.after.hdg = hodge_cx(res.part2);
  auto wa1 = is_weakly_admissible(res.part1);
  auto wa2 = is_weakly_admissible(res.part2);
  res.parts_wa = wa1.wa() && wa2.wa();
  if (!wa1.wa())
    throw DomainError("induced sub-filtration fails weak admissibility (internal assertion)");
  res.before.hn = hn_polygon_cx(res.part1);
  res.after.hn = hn_polygon_cx(res.part2);

  ConcavePolygon hn = hn_polygon_cx(obj);
  res.identities_ok =
      res.before.newt == restrict(newt, z.x) && res.before.hdg == restrict(hdg, z.x) &&
      res.before.hn == restrict(hn, z.x) && res.after.newt == rest_after(newt, z) &&
      res.after.hdg == rest_after(hdg, z) && res.after.hn == rest_after(hn, z) &&
      hn.is_break_point(z);
  return res;
}

bool corollary_3_4_precondition(const ConcavePolygon& hn_limit, const ConcavePolygon& hn_level1,
                                const Point& z) {
  return hn_limit.is_break_point(z) && hn_level1.lies_on(z);
}

std::vector<Point> remark_3_5_points(const ConcavePolygon& hn_limit) {
  std::vector<Point> out;
  const auto& verts = hn_limit.vertices();
  if (verts.size() < 3) return out;  // no interior break at all
  Rational first_slope = (verts[1].y - verts[0].y) / (verts[1].x - verts[0].x);
  if (first_slope == Rational(1)) out.push_back(verts[1]);
  std::size_t m = verts.size();
  Rational last_slope = (verts[m - 1].y - verts[m - 2].y) / (verts[m - 1].x - verts[m - 2].x);
  if (last_slope == Rational(0)) {
    Point cand = verts[m - 2];
    if (out.empty() || !(out.back() == cand)) out.push_back(cand);
  }
  return out;
}

namespace {

// Vertex of a concave polygon where the slope first drops below mu: all
// slopes before are >= mu, all after are < mu.
Point mu_break(const ConcavePolygon& poly, const Rational& mu) {
  const auto& verts = poly.vertices();
  std::size_t idx = 0;
  for (std::size_t k = 1; k < verts.size(); ++k) {
    Rational s = (verts[k].y - verts[k - 1].y) / (verts[k].x - verts[k - 1].x);
    if (s < mu) break;
    idx = k;
  }
  return verts[idx];
}

TorsionProfile dual_profile(const TorsionProfile& profile) {
  TorsionProfile out;
  out.n = profile.n;
  out.d = profile.d;
  out.e = profile.e;
  out.hn_limit = dual(profile.hn_limit);
  for (const auto& [i, poly] : profile.levels) out.levels[i] = dual(poly);
  return out;
}

SimulationTrace simulate_direct(const TorsionProfile& profile, const Point& z);

SimulationTrace simulate_inner(const TorsionProfile& profile, const Point& z, bool allow_dual) {
  const ConcavePolygon& hn = profile.hn_limit;
  const ConcavePolygon& level1 = profile.levels.at(1);
  if (!hn.is_break_point(z))
    throw DomainError("simulation point must be a break point of the limit polygon");
  if (!level1.lies_on(z))
    throw DomainError("simulation point must lie on the level-1 polygon");
  bool direct = level1.is_break_point(z);
  if (!direct) {
    Rational slope_at = level1.slope_after(z.x);  // straight through z
    direct = hn.slope_after(z.x) < slope_at;
  }
  if (direct) return simulate_direct(profile, z);
  if (!allow_dual)
    throw DomainError("dual reduction did not reach the direct branch (invalid profile)");
  // the slope of the level-1 polygon at z is strictly below the last limit
  // slope before z: pass to the dual side at (ht H/d - x, dim H^dual/d - x + y)
  Point zd{Rational(profile.n) - z.x, Rational(profile.n) - hn.end_value() - z.x + z.y};
  SimulationTrace trace = simulate_inner(dual_profile(profile), zd, false);
  trace.dualised = true;
  if (trace.conclusive) {
    Rational d(profile.d);
    trace.answer = {d * z.x, d * z.y};
  }
  return trace;
}

SimulationTrace simulate_direct(const TorsionProfile& profile, const Point& z) {
  SimulationTrace trace;
  const ConcavePolygon& level1 = profile.levels.at(1);
  Rational d(profile.d);
  // first break point of HN(H[p]) at or after z
  std::optional<Point> z1;
  for (const auto& bp : level1.break_points())
    if (!(bp.x < z.x) && !z1) z1 = bp;
  if (!z1) {
    trace.detail = "level-1 polygon has no break point at or after z";
    return trace;
  }
  trace.z1 = *z1;
  trace.mu = level1.slope_before(z1->x);

  std::vector<long> stored;
  for (const auto& [i, poly] : profile.levels) stored.push_back(i);
  std::sort(stored.begin(), stored.end());
  for (std::size_t k = 0; k < stored.size(); ++k)
    if (stored[k] != static_cast<long>(k + 1)) {
      trace.detail = "levels must be stored consecutively from 1";
      return trace;
    }

  std::vector<Rational> heights;
  for (long i : stored) {
    ConcavePolygon ri = hn_renormalised(profile, i);
    SimulationStep step;
    step.level = i;
    step.z_i = mu_break(ri, trace.mu);
    step.on_level1 = level1.lies_on(step.z_i);
    step.ht_g = Rational(i) * d * step.z_i.x;
    step.deg_g = Rational(i) * d * step.z_i.y;
    if (step.z_i.x < z.x || trace.z1.x < step.z_i.x) {
      trace.detail = "z_i escapes [x, x_1]; profile violates the simulation invariants";
      trace.steps.push_back(step);
      return trace;
    }
    if (!step.on_level1) {
      trace.detail = "z_i does not lie on the level-1 polygon";
      trace.steps.push_back(step);
      return trace;
    }
    if (!step.ht_g.is_integer()) {
      trace.detail = "ht G_i is not an integer";
      trace.steps.push_back(step);
      return trace;
    }
    heights.push_back(step.ht_g);
    trace.steps.push_back(step);
  }
  trace.a_nonincreasing = true;
  for (std::size_t k = 0; k + 1 < heights.size(); ++k) {
    long a = (heights[k + 1] - heights[k]).num().get_si();
    trace.a_seq.push_back(a);
    if (k > 0 && trace.a_seq[k - 1] < a) trace.a_nonincreasing = false;
  }
  if (!trace.a_nonincreasing) {
    trace.detail = "a_i increased; profile violates the simulation invariants";
    return trace;
  }
  if (trace.a_seq.empty()) {
    trace.detail = "need at least two stored levels";
    return trace;
  }
  // stabilization: a_i constant on a tail with the limit value d*x
  long tail = trace.a_seq.back();
  std::size_t i0 = trace.a_seq.size();
  while (i0 > 0 && trace.a_seq[i0 - 1] == tail) --i0;
  trace.i0 = static_cast<long>(i0 + 1);  // a_i is indexed from 1
  if (!(Rational(tail) == d * z.x)) {
    trace.detail = "a_i has not stabilized to d*x within the stored depth";
    return trace;
  }
  // K_i bookkeeping: ht K_i = i d x and deg K_i = i d y for stored i + i0
  std::size_t base_idx = i0;  // G_{i0} with i0 = trace.i0, zero-based index i0
  for (std::size_t k = base_idx + 1; k < trace.steps.size(); ++k) {
    long i = static_cast<long>(k - base_idx);
    Rational ht_k = trace.steps[k].ht_g - trace.steps[base_idx].ht_g;
    Rational deg_k = trace.steps[k].deg_g - trace.steps[base_idx].deg_g;
    if (!(ht_k == Rational(i) * d * z.x) || !(deg_k == Rational(i) * d * z.y)) {
      trace.detail = "K_i height/degree identity failed";
      return trace;
    }
  }
  trace.conclusive = true;
  trace.answer = {d * z.x, d * z.y};
  return trace;
}

}  // namespace

SimulationTrace prop_3_2_simulate(const TorsionProfile& profile, const Point& z) {
  if (profile.levels.count(1) == 0)
    throw DomainError("simulation needs the level-1 polygon");
  CheckReport rep = check_prop_2_8(profile);
  if (!rep.ok) throw DomainError("profile fails its invariants: " + rep.reason);
  return simulate_inner(profile, z, true);
}

SplitResult theorem_3_9(const FilteredIsocrystalCx& obj, const Point& z,
                        const TorsionProfile* profile) {
  ConcavePolygon newt = newt_cx(obj);
  ConcavePolygon hdg = hodge_cx(obj);
  auto candidates = detect_hodge_newton_reducible(newt, hdg);
  if (std::find(candidates.begin(), candidates.end(), z) == candidates.end())
    throw DomainError("object is not Hodge-Newton reducible at the given point");
  SplitResult res = split_filtered_isocrystal(obj, z);
  if (profile) {
    auto it = profile->levels.find(1);
    if (it == profile->levels.end())
      throw DomainError("torsion profile does not store level 1");
    ConcavePolygon hn = hn_polygon_cx(obj);
    if (!(profile->hn_limit == hn))
      throw DomainError("torsion profile limit differs from the object's polygon");
    if (!corollary_3_4_precondition(hn, it->second, z))
      throw DomainError("break point does not satisfy the level-1 condition");
  }
  return res;
}

SplitResult theorem_3_9(const DieudonneLift& h, const Point& z, const TorsionProfile* profile) {
  return theorem_3_9(to_filtered_isocrystal(h), z, profile);
}

PolarisedSplitResult corollary_3_11(const FilteredIsocrystalCx& obj, const Point& z) {
  ConcavePolygon newt = newt_cx(obj);
  ConcavePolygon hdg = hodge_cx(obj);
  ConcavePolygon hn = hn_polygon_cx(obj);
  if (!is_symmetric(newt) || !is_symmetric(hdg) || !is_symmetric(hn))
    throw DomainError("polarised split requires symmetric polygons");
  Rational n(obj.n());
  PolarisedSplitResult res;
  Point zd{n - z.x, newt.end_value() - z.x + z.y};
  res.z = z;
  res.z_dual = zd;
  if (zd.x < z.x) std::swap(res.z, res.z_dual);
  if (res.z == res.z_dual) {
    res.middle_empty = true;
    SplitResult s = theorem_3_9(obj, res.z);
    res.part1 = s.part1;
    res.part3 = s.part2;
    res.poly1 = s.before;
    res.poly3 = s.after;
  } else {
    SplitResult first = theorem_3_9(obj, res.z);
    Point inner{res.z_dual.x - res.z.x, res.z_dual.y - res.z.y};
    SplitResult second = theorem_3_9(first.part2, inner);
    res.part1 = first.part1;
    res.part2 = second.part1;
    res.part3 = second.part2;
    res.poly1 = first.before;
    res.poly2 = second.before;
    res.poly3 = second.after;
    res.middle_symmetric = is_symmetric(res.poly2.newt) && is_symmetric(res.poly2.hdg) &&
                           is_symmetric(res.poly2.hn);
  }
  res.duality_ok = res.poly3.newt == dual(res.poly1.newt) &&
                   res.poly3.hdg == dual(res.poly1.hdg) && res.poly3.hn == dual(res.poly1.hn);
  return res;
}

}  // namespace isopoly
