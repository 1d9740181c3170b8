#include "isopoly/filisoc.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace isopoly {

namespace {

std::vector<std::vector<Rational>> rational_mat_mul(const std::vector<std::vector<Rational>>& a,
                                                    const std::vector<std::vector<Rational>>& b) {
  std::size_t n = a.size();
  std::vector<std::vector<Rational>> out(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l) {
      if (a[i][l].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  return out;
}

// phi is sigma-linear, the operator linear with sigma-fixed coefficients:
// commutation is a permutation identity plus a coefficient identity.
void check_commutes(const StandardIsocrystal& isoc, const MonomialOperator& op) {
  long h = isoc.height();
  for (long j = 0; j < h; ++j) {
    if (op.perm[isoc.perm[j]] != isoc.perm[op.perm[j]])
      throw DomainError("coefficient operator does not commute with phi (permutation)");
    Rational lhs = isoc.units[j] * op.units[isoc.perm[j]] *
                   pow_int(isoc.p, isoc.exponents[j] + op.exponents[isoc.perm[j]]);
    Rational rhs = op.units[j] * isoc.units[op.perm[j]] *
                   pow_int(isoc.p, op.exponents[j] + isoc.exponents[op.perm[j]]);
    if (!(lhs == rhs))
      throw DomainError("coefficient operator does not commute with phi (coefficients)");
  }
}

void check_min_poly(const StandardIsocrystal& isoc, const MonomialOperator& op,
                    const std::vector<Rational>& eis) {
  long h = isoc.height();
  auto r = op.matrix(isoc.p);
  std::vector<std::vector<Rational>> acc(h, std::vector<Rational>(h, Rational(0)));
  std::vector<std::vector<Rational>> pw(h, std::vector<Rational>(h, Rational(0)));
  for (long i = 0; i < h; ++i) pw[i][i] = 1;
  for (const auto& c : eis) {
    for (long i = 0; i < h; ++i)
      for (long j = 0; j < h; ++j) acc[i][j] += c * pw[i][j];
    pw = rational_mat_mul(pw, r);
  }
  for (long i = 0; i < h; ++i)
    for (long j = 0; j < h; ++j)
      if (!acc[i][j].is_zero())
        throw DomainError("coefficient operator does not satisfy its Eisenstein polynomial");
}

long rank_restricted_to_complement(const EisensteinExt& ring, const KMat& rows,
                                   const std::vector<bool>& keep) {
  if (rows.empty()) return 0;
  KMat restricted;
  restricted.reserve(rows.size());
  for (const auto& r : rows) {
    KVec v;
    for (std::size_t j = 0; j < r.size(); ++j)
      if (!keep[j]) v.push_back(r[j]);
    restricted.push_back(std::move(v));
  }
  if (restricted[0].empty()) return 0;
  return k_rank(ring, restricted);
}

std::vector<GradedProfile> profiles_from_dims(const std::vector<long>& jumps,
                                              const std::vector<std::vector<long>>& dims) {
  std::vector<GradedProfile> out;
  for (const auto& d : dims) {
    std::map<long, long> g;
    for (std::size_t k = 0; k < jumps.size(); ++k) {
      long next = (k + 1 < d.size()) ? d[k + 1] : 0;
      long gr = d[k] - next;
      if (gr < 0) throw DomainError("filtration dimensions must be decreasing");
      if (gr > 0) g[jumps[k]] = gr;
    }
    out.emplace_back(std::move(g));
  }
  return out;
}

}  // namespace

void CoefficientField::validate(long p) const {
  if (d <= 0 || e_F <= 0 || f_F <= 0 || d != e_F * f_F)
    throw DomainError("coefficient field needs d = e_F * f_F");
  if (static_cast<long>(eis.size()) != e_F + 1)
    throw DomainError("coefficient Eisenstein polynomial must have degree e_F");
  EisensteinExt check(p, eis);  // validates the Eisenstein shape
  (void)check;
  if (star) {
    if (static_cast<long>(star->size()) != d) throw DomainError("involution must permute embeddings");
    std::vector<bool> seen(d, false);
    for (long v : *star) {
      if (v < 0 || v >= d || seen[v]) throw DomainError("involution must permute embeddings");
      seen[v] = true;
    }
    for (long i = 0; i < d; ++i)
      if ((*star)[(*star)[i]] != i) throw DomainError("involution must square to the identity");
  }
}

void FilteredIsocrystalCx::validate() const {
  isoc.validate();
  coeff.validate(isoc.p);
  long h = isoc.height();
  if (h % coeff.d != 0) throw DomainError("height must be a multiple of d");
  if (coeff.f_F > 1) {
    if (!isoc.v_labels || isoc.label_modulus != coeff.f_F)
      throw DomainError("inertia labels modulo f_F required");
    if (isoc.f % coeff.f_F != 0)
      throw DomainError("residue field must contain the inertia residue field");
  }
  if (coeff.e_F > 1) {
    if (!pi_op) throw DomainError("ramified coefficient action needs an explicit operator");
    pi_op->validate(isoc.p);
    if (static_cast<long>(pi_op->size()) != h) throw DomainError("operator size mismatch");
    check_commutes(isoc, *pi_op);
    check_min_poly(isoc, *pi_op, coeff.eis);
    if (isoc.v_labels)
      for (long j = 0; j < h; ++j)
        if ((*isoc.v_labels)[pi_op->perm[j]] != (*isoc.v_labels)[j])
          throw DomainError("coefficient operator must preserve inertia labels");
  }
  if (tier_b()) {
    if (base.p() != isoc.p) throw DomainError("base extension lives over a different prime");
    if (static_cast<long>(pi_roots.size()) != coeff.e_F)
      throw DomainError("need one root of the coefficient polynomial per ramified embedding");
    for (const auto& r : pi_roots) {
      EisElem acc = base.zero();
      EisElem pw = base.one();
      for (const auto& c : coeff.eis) {
        acc = base.add(acc, base.mul_rat(pw, c));
        pw = base.mul(pw, r);
      }
      if (!base.is_zero(acc)) throw DomainError("claimed coefficient root is not a root");
    }
    for (std::size_t i = 0; i < pi_roots.size(); ++i)
      for (std::size_t j = i + 1; j < pi_roots.size(); ++j)
        if (pi_roots[i] == pi_roots[j]) throw DomainError("coefficient roots must be distinct");
    const TierB& tb = std::get<TierB>(filtration);
    if (tb.fil.size() != tb.jumps.size()) throw DomainError("tier B shape mismatch");
    for (std::size_t k = 1; k < tb.jumps.size(); ++k)
      if (tb.jumps[k - 1] >= tb.jumps[k]) throw DomainError("jumps must be ascending");
    for (const auto& per_tau : tb.fil)
      if (static_cast<long>(per_tau.size()) != coeff.d)
        throw DomainError("tier B needs one basis per embedding");
  } else {
    const TierA& ta = std::get<TierA>(filtration);
    if (static_cast<long>(ta.profiles.size()) != coeff.d)
      throw DomainError("tier A needs one profile per embedding");
    for (const auto& pr : ta.profiles)
      if (pr.total_dim() != n()) throw DomainError("tau components must have dimension n");
  }
}

FilteredIsocrystalCx make_tier_a(StandardIsocrystal isoc, CoefficientField coeff,
                                 std::optional<MonomialOperator> pi_op,
                                 std::vector<GradedProfile> profiles,
                                 std::map<std::vector<long>, std::vector<GradedProfile>> table) {
  FilteredIsocrystalCx obj;
  obj.isoc = std::move(isoc);
  obj.coeff = std::move(coeff);
  obj.pi_op = std::move(pi_op);
  obj.base = EisensteinExt(obj.isoc.p, {Rational(-obj.isoc.p), Rational(1)});
  obj.filtration = TierA{std::move(profiles), std::move(table)};
  obj.validate();
  return obj;
}

KMat tau_space_basis(const FilteredIsocrystalCx& obj, long tau) {
  if (tau < 0 || tau >= obj.coeff.d) throw DomainError("embedding index out of range");
  long h = obj.height();
  long v = tau % obj.coeff.f_F;
  long l = tau / obj.coeff.f_F;
  std::vector<long> slots;
  for (long j = 0; j < h; ++j) {
    long lab = obj.isoc.v_labels ? (*obj.isoc.v_labels)[j] % obj.coeff.f_F : 0;
    if (lab == v) slots.push_back(j);
  }
  const EisensteinExt& ring = obj.base;
  KMat basis;
  if (obj.coeff.e_F == 1) {
    for (long j : slots) {
      KVec row(h, ring.zero());
      row[j] = ring.one();
      basis.push_back(std::move(row));
    }
  } else {
    // eigenvectors of the coefficient operator inside the label block
    long m = static_cast<long>(slots.size());
    std::vector<long> pos(h, -1);
    for (long i = 0; i < m; ++i) pos[slots[i]] = i;
    KMat block(m, KVec(m, ring.zero()));
    for (long i = 0; i < m; ++i) {
      long j = slots[i];
      long target = obj.pi_op->perm[j];
      if (pos[target] < 0) throw DomainError("operator does not preserve the label block");
      block[i][pos[target]] =
          ring.from_rational(obj.pi_op->units[j] * pow_int(obj.isoc.p, obj.pi_op->exponents[j]));
      block[i][i] = ring.sub(block[i][i], obj.pi_roots[l]);
    }
    KMat ker = k_left_kernel(ring, block);
    for (const auto& krow : ker) {
      KVec row(h, ring.zero());
      for (long i = 0; i < m; ++i) row[slots[i]] = krow[i];
      basis.push_back(std::move(row));
    }
  }
  if (static_cast<long>(basis.size()) != obj.n())
    throw DomainError("tau component is not equidimensional of dimension n");
  return basis;
}

FilteredIsocrystalCx make_tier_b_split(StandardIsocrystal isoc, CoefficientField coeff,
                                       std::optional<MonomialOperator> pi_op,
                                       EisensteinExt base, std::vector<EisElem> pi_roots,
                                       TierB filtration) {
  FilteredIsocrystalCx obj;
  obj.isoc = std::move(isoc);
  obj.coeff = std::move(coeff);
  obj.pi_op = std::move(pi_op);
  obj.base = std::move(base);
  if (pi_roots.empty() && obj.coeff.e_F == 1)
    pi_roots.push_back(obj.base.from_rational(-obj.coeff.eis[0]));
  obj.pi_roots = std::move(pi_roots);
  obj.filtration = std::move(filtration);
  obj.validate();
  TierB& tb = std::get<TierB>(obj.filtration);
  // the lowest jump must carry the whole tau space; rows must be nested bases
  for (long tau = 0; tau < obj.coeff.d; ++tau) {
    KMat ntau = tau_space_basis(obj, tau);
    if (tb.jumps.empty()) throw DomainError("filtration needs at least one jump");
    if (k_rank(obj.base, tb.fil[0][tau]) != obj.n() ||
        static_cast<long>(tb.fil[0][tau].size()) != obj.n())
      throw DomainError("lowest filtration step must span the tau component");
    for (std::size_t k = 0; k < tb.jumps.size(); ++k) {
      const KMat& rows = tb.fil[k][tau];
      if (static_cast<long>(k_rank(obj.base, rows)) != static_cast<long>(rows.size()))
        throw DomainError("filtration basis rows must be independent");
      for (const auto& r : rows)
        if (!k_in_rowspan(obj.base, r, ntau))
          throw DomainError("filtration rows must lie in their tau component");
      if (k > 0) {
        for (const auto& r : rows)
          if (!k_in_rowspan(obj.base, r, tb.fil[k - 1][tau]))
            throw DomainError("filtration must be decreasing");
      }
    }
  }
  return obj;
}

FilteredIsocrystalCx make_tier_b(StandardIsocrystal isoc, CoefficientField coeff,
                                 std::optional<MonomialOperator> pi_op, EisensteinExt base,
                                 std::vector<EisElem> pi_roots,
                                 const std::vector<std::pair<long, KMat>>& whole_steps) {
  // Build a skeleton object to get the tau bases, then decompose each step.
  FilteredIsocrystalCx skel;
  skel.isoc = isoc;
  skel.coeff = coeff;
  skel.pi_op = pi_op;
  skel.base = base;
  if (pi_roots.empty() && coeff.e_F == 1)
    pi_roots.push_back(base.from_rational(-coeff.eis[0]));
  skel.pi_roots = pi_roots;
  skel.filtration = TierA{std::vector<GradedProfile>(coeff.d, GradedProfile::trivial(
                                                                  isoc.height() / coeff.d)),
                          {}};
  skel.validate();

  std::vector<std::pair<long, KMat>> steps = whole_steps;
  std::sort(steps.begin(), steps.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t k = 1; k < steps.size(); ++k)
    if (steps[k - 1].first == steps[k].first) throw DomainError("duplicate filtration jump");
  if (steps.empty() || k_rank(base, steps[0].second) != isoc.height())
    throw DomainError("lowest filtration step must be the whole space");

  std::vector<KMat> tau_bases;
  for (long tau = 0; tau < coeff.d; ++tau) tau_bases.push_back(tau_space_basis(skel, tau));

  TierB tb;
  for (const auto& [jump, rows] : steps) {
    long total = k_rank(base, rows);
    std::vector<KMat> per_tau;
    long sum = 0;
    for (long tau = 0; tau < coeff.d; ++tau) {
      KMat inter = rows.empty() ? KMat{} : k_intersect(base, rows, tau_bases[tau]);
      sum += static_cast<long>(inter.size());
      per_tau.push_back(std::move(inter));
    }
    if (sum != total)
      throw DomainError("filtration step is not stable under the coefficient action");
    tb.jumps.push_back(jump);
    tb.fil.push_back(std::move(per_tau));
  }
  // Drop degenerate steps: if Fil^i = Fil^j for i < j then i is not a jump,
  // so the later index of an equal run survives.
  for (std::size_t k = 0; k + 1 < tb.jumps.size();) {
    bool degenerate = true;
    for (long tau = 0; tau < coeff.d; ++tau)
      if (tb.fil[k][tau].size() != tb.fil[k + 1][tau].size()) degenerate = false;
    if (degenerate) {
      tb.jumps.erase(tb.jumps.begin() + k);
      tb.fil.erase(tb.fil.begin() + k);
    } else {
      ++k;
    }
  }
  // drop trailing zero steps
  while (!tb.jumps.empty()) {
    bool empty = true;
    for (long tau = 0; tau < coeff.d; ++tau)
      if (!tb.fil.back()[tau].empty()) empty = false;
    if (empty && tb.jumps.size() > 1) {
      tb.jumps.pop_back();
      tb.fil.pop_back();
    } else {
      break;
    }
  }
  return make_tier_b_split(std::move(isoc), std::move(coeff), std::move(pi_op), std::move(base),
                           std::move(pi_roots), std::move(tb));
}

std::vector<GradedProfile> hodge_profiles(const FilteredIsocrystalCx& obj) {
  if (!obj.tier_b()) return std::get<TierA>(obj.filtration).profiles;
  const TierB& tb = std::get<TierB>(obj.filtration);
  std::vector<std::vector<long>> dims(obj.coeff.d);
  for (long tau = 0; tau < obj.coeff.d; ++tau)
    for (std::size_t k = 0; k < tb.jumps.size(); ++k)
      dims[tau].push_back(static_cast<long>(tb.fil[k][tau].size()));
  return profiles_from_dims(tb.jumps, dims);
}

long t_N(const FilteredIsocrystalCx& obj) { return dimension(obj.isoc); }

long t_H(const FilteredIsocrystalCx& obj) {
  long deg = 0;
  for (const auto& pr : hodge_profiles(obj)) deg += pr.degree();
  return deg;
}

ConcavePolygon newt_cx(const FilteredIsocrystalCx& obj) {
  return rescale(ConcavePolygon::from_newton_vector(newton_polygon(obj.isoc)), obj.coeff.d);
}

ConcavePolygon hodge_cx(const FilteredIsocrystalCx& obj) {
  std::vector<ConcavePolygon> types;
  for (const auto& pr : hodge_profiles(obj))
    types.push_back(ConcavePolygon::from_newton_vector(pr.type()));
  return average(types);
}

NewtonVector hodge_cx_vector(const FilteredIsocrystalCx& obj) {
  return hodge_cx(obj).to_newton_vector();
}

std::vector<std::vector<long>> stable_atoms(const FilteredIsocrystalCx& obj) {
  long h = obj.height();
  std::vector<long> parent(h);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<long(long)> find = [&](long x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](long a, long b) { parent[find(a)] = find(b); };
  for (long j = 0; j < h; ++j) {
    unite(j, obj.isoc.perm[j]);
    if (obj.pi_op) unite(j, obj.pi_op->perm[j]);
  }
  std::map<long, std::vector<long>> groups;
  for (long j = 0; j < h; ++j) groups[find(j)].push_back(j);
  std::vector<std::vector<long>> atoms;
  for (auto& [root, slots] : groups) {
    std::sort(slots.begin(), slots.end());
    atoms.push_back(std::move(slots));
  }
  std::sort(atoms.begin(), atoms.end());
  for (const auto& a : atoms)
    if (static_cast<long>(a.size()) % obj.coeff.d != 0)
      throw DomainError("stable atom height is not a multiple of d; inconsistent action data");
  return atoms;
}

std::vector<Subobject> enumerate_standard_subobjects(const FilteredIsocrystalCx& obj) {
  auto atoms = stable_atoms(obj);
  if (atoms.size() > 16) throw DomainError("subobject family too large to enumerate");
  const TierA* ta = obj.tier_b() ? nullptr : &std::get<TierA>(obj.filtration);
  const TierB* tb = obj.tier_b() ? &std::get<TierB>(obj.filtration) : nullptr;
  long h = obj.height();
  long d = obj.coeff.d;

  std::vector<Subobject> out;
  for (long mask = 0; mask < (1L << atoms.size()); ++mask) {
    Subobject s;
    for (std::size_t a = 0; a < atoms.size(); ++a)
      if (mask & (1L << a)) s.slots.insert(s.slots.end(), atoms[a].begin(), atoms[a].end());
    std::sort(s.slots.begin(), s.slots.end());
    for (long j : s.slots) s.t_n += obj.isoc.exponents[j];
    if (tb) {
      std::vector<bool> keep(h, false);
      for (long j : s.slots) keep[j] = true;
      std::vector<std::vector<long>> dims(d);
      for (long tau = 0; tau < d; ++tau)
        for (std::size_t k = 0; k < tb->jumps.size(); ++k) {
          const KMat& rows = tb->fil[k][tau];
          long dim = static_cast<long>(rows.size()) -
                     rank_restricted_to_complement(obj.base, rows, keep);
          dims[tau].push_back(dim);
        }
      s.profiles = profiles_from_dims(tb->jumps, dims);
    } else {
      if (s.slots.empty()) {
        s.profiles.assign(d, GradedProfile());
      } else if (static_cast<long>(s.slots.size()) == h) {
        s.profiles = ta->profiles;
      } else {
        auto it = ta->table.find(s.slots);
        if (it == ta->table.end())
          throw FidelityError("tier A object has no induced profile for a subobject");
        s.profiles = it->second;
      }
    }
    for (const auto& pr : s.profiles) s.t_h += pr.degree();
    s.wa_member = (s.t_h == s.t_n);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const Subobject& a, const Subobject& b) {
    if (a.slots.size() != b.slots.size()) return a.slots.size() < b.slots.size();
    return a.slots < b.slots;
  });
  return out;
}

WaReport is_weakly_admissible(const FilteredIsocrystalCx& obj) {
  WaReport rep;
  rep.top_equality = (t_H(obj) == t_N(obj));
  rep.subobjects_ok = true;
  for (const auto& s : enumerate_standard_subobjects(obj)) {
    if (s.t_h > s.t_n) {
      rep.subobjects_ok = false;
      if (!rep.violation) rep.violation = s;
    }
  }
  // Completeness heuristic: distinct atoms sharing a Newton slope may admit
  // non-coordinate subobjects.
  auto atoms = stable_atoms(obj);
  std::map<Rational, long> slope_owner;
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    std::set<Rational> slopes;
    for (long j : atoms[a]) {
      // slope of the phi-cycle through j
      long cur = j, len = 0, sum = 0;
      do {
        sum += obj.isoc.exponents[cur];
        cur = obj.isoc.perm[cur];
        ++len;
      } while (cur != j);
      slopes.insert(Rational(sum, len));
    }
    for (const auto& sl : slopes) {
      auto it = slope_owner.find(sl);
      if (it != slope_owner.end() && it->second != static_cast<long>(a))
        rep.family_complete = false;
      slope_owner[sl] = static_cast<long>(a);
    }
  }
  return rep;
}

ConcavePolygon hn_polygon_cx(const FilteredIsocrystalCx& obj) {
  WaReport rep = is_weakly_admissible(obj);
  if (!rep.wa()) throw DomainError("Harder-Narasimhan polygon needs a weakly admissible object");
  Rational d(obj.coeff.d);
  std::vector<Point> pts;
  for (const auto& s : enumerate_standard_subobjects(obj))
    if (s.wa_member)
      pts.push_back({Rational(static_cast<long>(s.slots.size())) / d, Rational(-s.t_n) / d});
  return concave_envelope(pts);
}

std::vector<Subobject> hn_filtration(const FilteredIsocrystalCx& obj) {
  ConcavePolygon hn = hn_polygon_cx(obj);
  auto subs = enumerate_standard_subobjects(obj);
  Rational d(obj.coeff.d);
  std::vector<Subobject> chain;
  std::vector<long> prev;  // slot set of the previous member
  for (std::size_t vi = 1; vi < hn.vertices().size(); ++vi) {
    const Point& v = hn.vertices()[vi];
    const Subobject* pick = nullptr;
    for (const auto& s : subs) {
      if (!s.wa_member) continue;
      if (!(Rational(static_cast<long>(s.slots.size())) / d == v.x)) continue;
      if (!(Rational(-s.t_n) / d == v.y)) continue;
      if (!std::includes(s.slots.begin(), s.slots.end(), prev.begin(), prev.end())) continue;
      pick = &s;
      break;  // subs are sorted; the first hit is the canonical tie-break
    }
    if (!pick)
      throw DomainError("no nested subobject realizes a Harder-Narasimhan vertex");
    chain.push_back(*pick);
    prev = pick->slots;
  }
  return chain;
}

ChainReport verify_inequality_chain(const FilteredIsocrystalCx& obj) {
  ChainReport rep;
  rep.hn = hn_polygon_cx(obj);
  rep.newt = newt_cx(obj);
  rep.hdg = hodge_cx(obj);
  rep.ends_match = rep.hn.end_value() == rep.newt.end_value() &&
                   rep.newt.end_value() == rep.hdg.end_value();
  rep.hn_le_newt = rep.ends_match && leq(rep.hn, rep.newt);
  rep.newt_le_hdg = rep.ends_match && leq(rep.newt, rep.hdg);
  if (!rep.ok()) {
    // locate a witness abscissa among the union of vertices
    std::vector<Rational> xs;
    for (const auto* poly : {&rep.hn, &rep.newt, &rep.hdg})
      for (const auto& v : poly->vertices()) xs.push_back(v.x);
    std::sort(xs.begin(), xs.end());
    for (const auto& x : xs) {
      if (rep.newt.eval(x) < rep.hn.eval(x) || rep.hdg.eval(x) < rep.newt.eval(x)) {
        rep.witness_x = x;
        break;
      }
    }
    if (!rep.witness_x) rep.witness_x = rep.hn.domain_end();
  }
  return rep;
}

bool jumps_within(const FilteredIsocrystalCx& obj, long lo, long hi) {
  for (const auto& pr : hodge_profiles(obj))
    for (const auto& [jump, dim] : pr.graded())
      if (jump < lo || jump > hi) return false;
  return true;
}

namespace {

void check_stable_slots(const FilteredIsocrystalCx& obj, const std::vector<long>& slots) {
  std::vector<bool> in(obj.height(), false);
  for (long j : slots) {
    if (j < 0 || j >= obj.height()) throw DomainError("slot out of range");
    in[j] = true;
  }
  for (long j : slots) {
    if (!in[obj.isoc.perm[j]]) throw DomainError("slot set is not phi-stable");
    if (obj.pi_op && !in[obj.pi_op->perm[j]]) throw DomainError("slot set is not F-stable");
  }
}

StandardIsocrystal restrict_isoc(const StandardIsocrystal& m, const std::vector<long>& slots,
                                 const std::vector<long>& newpos) {
  StandardIsocrystal out;
  out.p = m.p;
  out.f = m.f;
  out.label_modulus = m.label_modulus;
  if (m.v_labels) out.v_labels.emplace();
  for (long j : slots) {
    out.perm.push_back(newpos[m.perm[j]]);
    out.exponents.push_back(m.exponents[j]);
    out.units.push_back(m.units[j]);
    if (m.v_labels) out.v_labels->push_back((*m.v_labels)[j]);
  }
  return out;
}

MonomialOperator restrict_op(const MonomialOperator& op, const std::vector<long>& slots,
                             const std::vector<long>& newpos) {
  MonomialOperator out;
  for (long j : slots) {
    out.perm.push_back(newpos[op.perm[j]]);
    out.exponents.push_back(op.exponents[j]);
    out.units.push_back(op.units[j]);
  }
  return out;
}

}  // namespace

FilteredIsocrystalCx sub_object(const FilteredIsocrystalCx& obj, const std::vector<long>& slots) {
  check_stable_slots(obj, slots);
  if (slots.empty()) throw DomainError("empty subobject has no standalone representation");
  std::vector<long> sorted = slots;
  std::sort(sorted.begin(), sorted.end());
  std::vector<long> newpos(obj.height(), -1);
  for (std::size_t i = 0; i < sorted.size(); ++i) newpos[sorted[i]] = static_cast<long>(i);

  StandardIsocrystal sub_isoc = restrict_isoc(obj.isoc, sorted, newpos);
  std::optional<MonomialOperator> sub_op;
  if (obj.pi_op) sub_op = restrict_op(*obj.pi_op, sorted, newpos);

  if (obj.tier_b()) {
    const TierB& tb = std::get<TierB>(obj.filtration);
    std::vector<bool> keep(obj.height(), false);
    for (long j : sorted) keep[j] = true;
    KMat coord;  // rows spanning the coordinate subspace
    for (long j : sorted) {
      KVec row(obj.height(), obj.base.zero());
      row[j] = obj.base.one();
      coord.push_back(std::move(row));
    }
    TierB sub_tb;
    for (std::size_t k = 0; k < tb.jumps.size(); ++k) {
      std::vector<KMat> per_tau;
      for (long tau = 0; tau < obj.coeff.d; ++tau) {
        KMat inter = tb.fil[k][tau].empty() ? KMat{}
                                            : k_intersect(obj.base, tb.fil[k][tau], coord);
        KMat reindexed;
        for (const auto& r : inter) {
          KVec v;
          for (long j : sorted) v.push_back(r[j]);
          reindexed.push_back(std::move(v));
        }
        per_tau.push_back(std::move(reindexed));
      }
      sub_tb.jumps.push_back(tb.jumps[k]);
      sub_tb.fil.push_back(std::move(per_tau));
    }
    // drop steps that became degenerate; keep at least the lowest
    while (sub_tb.jumps.size() > 1) {
      bool empty = true;
      for (const auto& rows : sub_tb.fil.back())
        if (!rows.empty()) empty = false;
      if (empty) {
        sub_tb.jumps.pop_back();
        sub_tb.fil.pop_back();
      } else {
        break;
      }
    }
    return make_tier_b_split(std::move(sub_isoc), obj.coeff, std::move(sub_op), obj.base,
                             obj.pi_roots, std::move(sub_tb));
  }
  const TierA& ta = std::get<TierA>(obj.filtration);
  std::vector<GradedProfile> profiles;
  if (static_cast<long>(sorted.size()) == obj.height()) {
    profiles = ta.profiles;
  } else {
    auto it = ta.table.find(sorted);
    if (it == ta.table.end()) throw FidelityError("tier A subobject profile missing");
    profiles = it->second;
  }
  // restrict the table to subsets of the chosen slots
  std::map<std::vector<long>, std::vector<GradedProfile>> table;
  for (const auto& [key, val] : ta.table) {
    if (!std::includes(sorted.begin(), sorted.end(), key.begin(), key.end())) continue;
    std::vector<long> rekey;
    for (long j : key) rekey.push_back(newpos[j]);
    table[rekey] = val;
  }
  return make_tier_a(std::move(sub_isoc), obj.coeff, std::move(sub_op), std::move(profiles),
                     std::move(table));
}

FilteredIsocrystalCx quotient_object(const FilteredIsocrystalCx& obj,
                                     const std::vector<long>& slots) {
  check_stable_slots(obj, slots);
  std::vector<long> sorted = slots;
  std::sort(sorted.begin(), sorted.end());
  std::vector<bool> removed(obj.height(), false);
  for (long j : sorted) removed[j] = true;
  std::vector<long> rest;
  for (long j = 0; j < obj.height(); ++j)
    if (!removed[j]) rest.push_back(j);
  if (rest.empty()) throw DomainError("empty quotient has no standalone representation");
  std::vector<long> newpos(obj.height(), -1);
  for (std::size_t i = 0; i < rest.size(); ++i) newpos[rest[i]] = static_cast<long>(i);

  StandardIsocrystal q_isoc = restrict_isoc(obj.isoc, rest, newpos);
  std::optional<MonomialOperator> q_op;
  if (obj.pi_op) q_op = restrict_op(*obj.pi_op, rest, newpos);

  if (obj.tier_b()) {
    const TierB& tb = std::get<TierB>(obj.filtration);
    TierB q_tb;
    for (std::size_t k = 0; k < tb.jumps.size(); ++k) {
      std::vector<KMat> per_tau;
      for (long tau = 0; tau < obj.coeff.d; ++tau) {
        KMat projected;
        for (const auto& r : tb.fil[k][tau]) {
          KVec v;
          for (long j : rest) v.push_back(r[j]);
          projected.push_back(std::move(v));
        }
        per_tau.push_back(k_row_basis(obj.base, projected));
      }
      q_tb.jumps.push_back(tb.jumps[k]);
      q_tb.fil.push_back(std::move(per_tau));
    }
    while (q_tb.jumps.size() > 1) {
      bool empty = true;
      for (const auto& rows : q_tb.fil.back())
        if (!rows.empty()) empty = false;
      if (empty) {
        q_tb.jumps.pop_back();
        q_tb.fil.pop_back();
      } else {
        break;
      }
    }
    return make_tier_b_split(std::move(q_isoc), obj.coeff, std::move(q_op), obj.base,
                             obj.pi_roots, std::move(q_tb));
  }
  const TierA& ta = std::get<TierA>(obj.filtration);
  auto sub_profiles_of = [&](const std::vector<long>& key) -> std::vector<GradedProfile> {
    if (key.empty()) return std::vector<GradedProfile>(obj.coeff.d, GradedProfile());
    if (static_cast<long>(key.size()) == obj.height()) return ta.profiles;
    auto it = ta.table.find(key);
    if (it == ta.table.end()) throw FidelityError("tier A subobject profile missing");
    return it->second;
  };
  std::vector<GradedProfile> base_profiles = sub_profiles_of(sorted);
  std::vector<GradedProfile> profiles;
  for (long tau = 0; tau < obj.coeff.d; ++tau)
    profiles.push_back(ta.profiles[tau].quotient_by(base_profiles[tau]));
  std::map<std::vector<long>, std::vector<GradedProfile>> table;
  for (const auto& [key, val] : ta.table) {
    if (!std::includes(key.begin(), key.end(), sorted.begin(), sorted.end())) continue;
    std::vector<long> rekey;
    for (long j : key)
      if (!removed[j]) rekey.push_back(newpos[j]);
    std::vector<GradedProfile> qprofiles;
    for (long tau = 0; tau < obj.coeff.d; ++tau)
      qprofiles.push_back(val[tau].quotient_by(base_profiles[tau]));
    table[rekey] = qprofiles;
  }
  return make_tier_a(std::move(q_isoc), obj.coeff, std::move(q_op), std::move(profiles),
                     std::move(table));
}

std::string describe(const FilteredIsocrystalCx& obj) {
  std::ostringstream os;
  os << "height " << obj.height() << ", d " << obj.coeff.d << " (e_F " << obj.coeff.e_F
     << ", f_F " << obj.coeff.f_F << "), tier " << (obj.tier_b() ? "B" : "A") << "\n";
  os << "t_N " << t_N(obj) << ", t_H " << t_H(obj) << "\n";
  os << "Newt: " << to_string(newt_cx(obj)) << "\n";
  os << "Hdg:  " << to_string(hodge_cx(obj)) << "\n";
  return os.str();
}

}  // namespace isopoly
