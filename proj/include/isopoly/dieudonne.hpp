#pragma once

#include "isopoly/filisoc.hpp"

namespace isopoly {

enum class Variance { covariant, contravariant };

// Model of a p-divisible group over O_K: a Dieudonne lattice over the base
// (monomial phi with exponents in {0,1}), the coefficient action, and a
// filtration lattice L inside D (x) O_K with rank = dim H^dual, reducing to
// V D / p D over the residue field. The contravariant tag records that the
// stored lattice is the contravariant module of the named group; the polygon
// machinery always reads the stored data covariantly.
struct DieudonneLift {
  StandardIsocrystal lattice_phi;
  CoefficientField coeff;
  std::optional<MonomialOperator> pi_op;
  EisensteinExt base;
  std::vector<EisElem> pi_roots;
  KMat fil_lattice;  // generator rows over the base
  Variance variance = Variance::covariant;

  long height() const { return lattice_phi.height(); }
  long dim() const { return height() - static_cast<long>(fil_lattice.size()); }
};

// Structural gates plus the functor: isocrystal = p^{-1} phi, Fil^0 = L (x) K,
// jumps within {-1, 0}, tau-decomposition computed over the Eisenstein tower.
// Throws ModelViolation when a gate fails.
FilteredIsocrystalCx to_filtered_isocrystal(const DieudonneLift& h);

struct PdivWaReport {
  bool model_ok = false;
  bool top_identity = false;  // t_H = t_N = -dim H
  WaReport wa;
  std::string detail;
  bool ok() const { return model_ok && top_identity && wa.wa(); }
};

PdivWaReport verify_wa_pdiv(const DieudonneLift& h);

struct PolygonTriple {
  ConcavePolygon newt, hdg, hn;
};

// The three polygons of the associated filtered isocrystal; common end value
// dim H / d.
PolygonTriple polygons(const DieudonneLift& h);

// Hodge polygon of the p-divisible group over k whose contravariant Dieudonne
// module is the given monomial lattice (exponents in {0,1}, labels modulo
// d = f_F present): r_i = #{slots with label i and exponent 0},
// f_i = (1^{(n - r_i)}, 0^{(r_i)}), result (1/d) sum f_i. Unramified
// coefficient structure only.
NewtonVector hodge_unramified(const StandardIsocrystal& hk, long d);

// The dual model: dual lattice with the Verschiebung-twisted operator
// (exponents 1 - a), filtration = annihilator of L, star twist applied to the
// coefficient action labels.
DieudonneLift dual_lift(const DieudonneLift& h);

struct DualityReport {
  bool newt_dual_ok = false;
  bool hdg_dual_ok = false;
  bool hn_dual_ok = false;
  bool polarised_symmetric = false;  // meaningful when polarised is requested
  PolygonTriple primal, dual_side;
  bool ok(bool polarised) const {
    return newt_dual_ok && hdg_dual_ok && hn_dual_ok && (!polarised || polarised_symmetric);
  }
};

// Computes the dual model's polygons and checks them against the polygon
// duals; for polarised inputs additionally demands symmetric polygons.
DualityReport duality_and_polarisation_check(const DieudonneLift& h, bool polarised);

// Example 2.4: two lifts H_0, H_1 of the same reduction over F = Q_p(pi),
// pi^2 = p, with Hodge polygons (1/2, 1/2) and (1, 0).
std::pair<DieudonneLift, DieudonneLift> example_2_4(long p);

struct Example211 {
  DieudonneLift m_lift;       // canonical lift attached to the lattice M
  DieudonneLift mprime_lift;  // canonical lift attached to M'
  std::vector<KMat> inclusion_components;  // per-label presentation of M/M'
};

// Example 2.11: contravariant lattices M, M' over F = Q_{p^2} with an
// equivariant isogeny whose cokernel sits in one inertia component only.
Example211 example_2_11(long p);

}  // namespace isopoly
