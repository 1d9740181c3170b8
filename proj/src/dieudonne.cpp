#include "isopoly/dieudonne.hpp"

#include <algorithm>
#include <sstream>

namespace isopoly {

namespace {

void model_gates(const DieudonneLift& h) {
  h.lattice_phi.validate();
  for (long a : h.lattice_phi.exponents)
    if (a < 0 || a > 1)
      throw ModelViolation("lattice phi must satisfy p D within phi D within D (exponents 0 or 1)");
  long hh = h.height();
  for (const auto& row : h.fil_lattice) {
    if (static_cast<long>(row.size()) != hh) throw ModelViolation("filtration lattice shape");
    for (const auto& x : row)
      if (!h.base.is_integral(x)) throw ModelViolation("filtration lattice must be integral");
  }
  if (!h.fil_lattice.empty()) {
    // direct summand: all Smith divisors are units
    SnfResult s = smith_normal_form(h.base, h.fil_lattice);
    if (s.rank != static_cast<long>(h.fil_lattice.size()))
      throw ModelViolation("filtration lattice rows must be independent");
    for (long i = 0; i < s.rank; ++i)
      if (!(*h.base.valuation(s.divisors[i]) == Rational(0)))
        throw ModelViolation("filtration lattice must be a direct summand");
  }
  // reduction condition: L (x) k = V D / p D = span of the exponent-1 slots
  std::vector<std::vector<long>> target;
  for (long j = 0; j < hh; ++j) {
    if (h.lattice_phi.exponents[j] == 1) {
      std::vector<long> row(hh, 0);
      row[j] = 1;
      target.push_back(std::move(row));
    }
  }
  auto reduced = residue_row_basis(h.base, h.fil_lattice);
  if (reduced != target)
    throw ModelViolation("filtration lattice does not reduce to V D / p D");
  // O_F-stability of the filtration lattice
  if (h.pi_op) {
    KMat opmat = k_from_rational(h.base, h.pi_op->matrix(h.lattice_phi.p));
    KMat image = k_mul(h.base, h.fil_lattice, opmat);
    auto x = k_solve_in_rowspan(h.base, h.fil_lattice, image);
    if (!x) throw ModelViolation("filtration lattice is not stable under the coefficient action");
    for (const auto& row : *x)
      for (const auto& c : row)
        if (!h.base.is_integral(c))
          throw ModelViolation("filtration lattice is not stable under the coefficient action");
  }
}

}  // namespace

FilteredIsocrystalCx to_filtered_isocrystal(const DieudonneLift& h) {
  model_gates(h);
  StandardIsocrystal iso = shift(h.lattice_phi, -1);
  long hh = h.height();
  KMat full;
  for (long j = 0; j < hh; ++j) {
    KVec row(hh, h.base.zero());
    row[j] = h.base.one();
    full.push_back(std::move(row));
  }
  std::vector<std::pair<long, KMat>> steps{{-1, full}};
  if (!h.fil_lattice.empty()) steps.push_back({0, h.fil_lattice});
  try {
    auto obj = make_tier_b(std::move(iso), h.coeff, h.pi_op, h.base, h.pi_roots, steps);
    if (!jumps_within(obj, -1, 0)) throw ModelViolation("filtration jumps escape {-1, 0}");
    return obj;
  } catch (const DomainError& e) {
    throw ModelViolation(std::string("model does not define a filtered isocrystal: ") + e.what());
  }
}

PdivWaReport verify_wa_pdiv(const DieudonneLift& h) {
  PdivWaReport rep;
  FilteredIsocrystalCx obj;
  try {
    obj = to_filtered_isocrystal(h);
    rep.model_ok = true;
  } catch (const ModelViolation& e) {
    rep.detail = e.what();
    return rep;
  }
  long expected = -h.dim();
  rep.top_identity = (t_H(obj) == expected) && (t_N(obj) == expected);
  rep.wa = is_weakly_admissible(obj);
  if (!rep.ok()) {
    std::ostringstream os;
    os << "t_N " << t_N(obj) << ", t_H " << t_H(obj) << ", -dim H " << expected;
    rep.detail = os.str();
  }
  return rep;
}

PolygonTriple polygons(const DieudonneLift& h) {
  auto obj = to_filtered_isocrystal(h);
  PolygonTriple t;
  t.newt = newt_cx(obj);
  t.hdg = hodge_cx(obj);
  t.hn = hn_polygon_cx(obj);
  return t;
}

NewtonVector hodge_unramified(const StandardIsocrystal& hk, long d) {
  if (!hk.v_labels || hk.label_modulus != d)
    throw DomainError("unramified Hodge recipe needs inertia labels modulo d");
  if (hk.height() % d != 0) throw DomainError("height must be a multiple of d");
  for (long a : hk.exponents)
    if (a < 0 || a > 1) throw DomainError("Dieudonne lattice exponents must be 0 or 1");
  long n = hk.height() / d;
  std::vector<ConcavePolygon> parts;
  for (long i = 0; i < d; ++i) {
    long r = 0;
    for (long j = 0; j < hk.height(); ++j)
      if ((*hk.v_labels)[j] % d == i && hk.exponents[j] == 0) ++r;
    std::vector<Rational> entries;
    for (long k = 0; k < n - r; ++k) entries.push_back(1);
    for (long k = 0; k < r; ++k) entries.push_back(0);
    parts.push_back(ConcavePolygon::from_newton_vector(NewtonVector(std::move(entries))));
  }
  return average(parts).to_newton_vector();
}

DieudonneLift dual_lift(const DieudonneLift& h) {
  DieudonneLift out;
  out.base = h.base;
  out.coeff = h.coeff;
  out.variance = h.variance;
  // dual lattice: phi^dual(b*_j) = unit^{-1} p^{1-a_j} b*_{perm(j)}
  out.lattice_phi = h.lattice_phi;
  for (std::size_t j = 0; j < out.lattice_phi.exponents.size(); ++j) {
    out.lattice_phi.exponents[j] = 1 - h.lattice_phi.exponents[j];
    out.lattice_phi.units[j] = Rational(1) / h.lattice_phi.units[j];
  }
  // dual coefficient action: transpose-inverse of the monomial operator,
  // with the star twist folded into the root labelling
  if (h.pi_op) {
    MonomialOperator op;
    long hh = h.height();
    op.perm.assign(hh, 0);
    op.exponents.assign(hh, 0);
    op.units.assign(hh, Rational(1));
    for (long j = 0; j < hh; ++j) {
      // iota^dual(a) = iota(a)^t on the dual basis: entry j -> op.perm^{-1}(j)
      op.perm[h.pi_op->perm[j]] = j;
      op.exponents[h.pi_op->perm[j]] = h.pi_op->exponents[j];
      op.units[h.pi_op->perm[j]] = h.pi_op->units[j];
    }
    out.pi_op = op;
  }
  out.pi_roots = h.pi_roots;
  if (h.coeff.star) {
    // the involution permutes the embeddings; reorder the ramified roots
    std::vector<EisElem> roots = h.pi_roots;
    for (long l = 0; l < h.coeff.e_F; ++l) {
      long tau = l * h.coeff.f_F;  // representative embedding for this root
      long image = (*h.coeff.star)[tau];
      roots[l] = h.pi_roots[image / h.coeff.f_F];
    }
    out.pi_roots = roots;
  }
  // filtration of the dual: the annihilator of L inside the dual lattice
  out.fil_lattice = h.fil_lattice.empty()
                        ? k_identity(h.base, h.height())
                        : kernel_lattice(h.base, k_transpose(h.fil_lattice));
  return out;
}

DualityReport duality_and_polarisation_check(const DieudonneLift& h, bool polarised) {
  DualityReport rep;
  rep.primal = polygons(h);
  rep.dual_side = polygons(dual_lift(h));
  rep.newt_dual_ok = rep.dual_side.newt == dual(rep.primal.newt);
  rep.hdg_dual_ok = rep.dual_side.hdg == dual(rep.primal.hdg);
  rep.hn_dual_ok = rep.dual_side.hn == dual(rep.primal.hn);
  if (polarised)
    rep.polarised_symmetric = is_symmetric(rep.primal.newt) && is_symmetric(rep.primal.hdg) &&
                              is_symmetric(rep.primal.hn);
  return rep;
}

std::pair<DieudonneLift, DieudonneLift> example_2_4(long p) {
  StandardIsocrystal m;
  m.p = p;
  m.f = 1;
  m.perm = {1, 0, 3, 2};
  m.exponents = {0, 1, 0, 1};
  m.units = {1, 1, 1, 1};
  MonomialOperator pi{{1, 0, 3, 2}, {0, 1, 0, 1}, {1, 1, 1, 1}};
  CoefficientField f{2, 2, 1, {Rational(-p), Rational(0), Rational(1)}, std::nullopt};
  EisensteinExt base(p, {Rational(-p), Rational(0), Rational(1)});
  EisElem rt = base.uniformizer();
  DieudonneLift h0;
  h0.lattice_phi = m;
  h0.coeff = f;
  h0.pi_op = pi;
  h0.base = base;
  h0.pi_roots = {rt, base.neg(rt)};
  KVec v0a{rt, base.one(), base.zero(), base.zero()};
  KVec v0b{base.zero(), base.zero(), rt, base.one()};
  KVec v1b{base.zero(), base.zero(), base.neg(rt), base.one()};
  h0.fil_lattice = {v0a, v0b};
  DieudonneLift h1 = h0;
  h1.fil_lattice = {v0a, v1b};
  return {h0, h1};
}

Example211 example_2_11(long p) {
  Example211 ex;
  // Contravariant modules on e1, f1, e2, f2 with F = Q_{p^2} acting through
  // the embedding on <e1, e2> (label 0) and its conjugate on <f1, f2>.
  StandardIsocrystal m;
  m.p = p;
  m.f = 2;
  m.perm = {1, 0, 3, 2};
  m.exponents = {1, 0, 0, 1};
  m.units = {1, 1, 1, 1};
  m.v_labels = std::vector<long>{0, 1, 0, 1};
  m.label_modulus = 2;
  StandardIsocrystal mprime = m;  // basis e1, p f1, e2, f2
  mprime.exponents = {0, 1, 0, 1};

  CoefficientField f{2, 1, 2, {Rational(-p), Rational(1)}, std::nullopt};
  EisensteinExt base(p, {Rational(-p), Rational(1)});

  auto canonical_lift = [&](const StandardIsocrystal& lat) {
    DieudonneLift h;
    h.lattice_phi = lat;
    h.coeff = f;
    h.base = base;
    h.variance = Variance::contravariant;
    for (long j = 0; j < lat.height(); ++j) {
      if (lat.exponents[j] != 1) continue;
      KVec row(lat.height(), base.zero());
      row[j] = base.one();
      h.fil_lattice.push_back(std::move(row));
    }
    return h;
  };
  ex.m_lift = canonical_lift(m);
  ex.mprime_lift = canonical_lift(mprime);

  // M/M' per inertia component: label 0 has basis (e1, e2), unchanged;
  // label 1 has basis (f1, f2) with f1 replaced by p f1.
  EisensteinExt w(p, {Rational(-p), Rational(1)});
  KMat c0{{w.one(), w.zero()}, {w.zero(), w.one()}};
  KMat c1{{w.from_rational(p), w.zero()}, {w.zero(), w.one()}};
  ex.inclusion_components = {c0, c1};
  return ex;
}

}  // namespace isopoly
