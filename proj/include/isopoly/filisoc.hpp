#pragma once

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "isopoly/filvect.hpp"
#include "isopoly/isocrystal.hpp"
#include "isopoly/linalg.hpp"

namespace isopoly {

// Descriptor of the coefficient field F over Q_p: degree d = e_F * f_F, with
// the totally ramified part presented by a monic Eisenstein polynomial over
// the inertia subfield (rational p-integral coefficients). Embeddings are
// indexed 0..d-1; tau restricts to the inertia embedding tau mod f_F and
// picks the root with index tau div f_F.
struct CoefficientField {
  long d = 1;
  long e_F = 1;
  long f_F = 1;
  std::vector<Rational> eis;  // degree e_F; default X - p is filled on validate
  std::optional<std::vector<long>> star;  // involution as a permutation of 0..d-1

  void validate(long p) const;
  static CoefficientField trivial(long p) {
    return CoefficientField{1, 1, 1, {Rational(-p), Rational(1)}, std::nullopt};
  }
};

// Fidelity tier A: graded-dimension profiles per embedding, plus an optional
// table of induced profiles for the standard subobjects (keyed by sorted slot
// sets). Enough to evaluate every polygon, not to compute intersections.
struct TierA {
  std::vector<GradedProfile> profiles;
  std::map<std::vector<long>, std::vector<GradedProfile>> table;
};

// Fidelity tier B: explicit bases of Fil^i N_tau over the Eisenstein base.
// jumps are the global jumps ascending; fil[k][tau] are basis rows of
// Fil^{jumps[k]} N_tau inside K^h; fil[0][tau] spans all of N_tau.
struct TierB {
  std::vector<long> jumps;
  std::vector<std::vector<KMat>> fil;
};

// Filtered isocrystal over K with coefficients in F, at one of two fidelity
// tiers. The ramified part of the F-action, when nontrivial, is an explicit
// monomial operator commuting with phi; its eigenvalues in K are the
// embedding images of the F-uniformizer (split Eisenstein pair).
struct FilteredIsocrystalCx {
  StandardIsocrystal isoc;
  CoefficientField coeff;
  std::optional<MonomialOperator> pi_op;
  EisensteinExt base;
  std::vector<EisElem> pi_roots;  // e_F roots of coeff.eis in base
  std::variant<TierA, TierB> filtration;

  long height() const { return isoc.height(); }
  long n() const { return isoc.height() / coeff.d; }
  bool tier_b() const { return std::holds_alternative<TierB>(filtration); }
  void validate() const;
};

// Builders. The tier-B builder takes whole-space filtration steps
// (jump, basis rows of Fil^jump N_K) and computes the tau-decomposition;
// it rejects filtrations that are not F-stable.
FilteredIsocrystalCx make_tier_b(StandardIsocrystal isoc, CoefficientField coeff,
                                 std::optional<MonomialOperator> pi_op, EisensteinExt base,
                                 std::vector<EisElem> pi_roots,
                                 const std::vector<std::pair<long, KMat>>& whole_steps);
// Tier-B builder from per-tau bases (already decomposed).
FilteredIsocrystalCx make_tier_b_split(StandardIsocrystal isoc, CoefficientField coeff,
                                       std::optional<MonomialOperator> pi_op,
                                       EisensteinExt base, std::vector<EisElem> pi_roots,
                                       TierB filtration);
FilteredIsocrystalCx make_tier_a(StandardIsocrystal isoc, CoefficientField coeff,
                                 std::optional<MonomialOperator> pi_op,
                                 std::vector<GradedProfile> profiles,
                                 std::map<std::vector<long>, std::vector<GradedProfile>> table = {});

// Basis of the tau-eigenspace N_tau (n rows in K^h).
KMat tau_space_basis(const FilteredIsocrystalCx& obj, long tau);

// Per-embedding filtration profiles of the object itself.
std::vector<GradedProfile> hodge_profiles(const FilteredIsocrystalCx& obj);

long t_N(const FilteredIsocrystalCx& obj);
long t_H(const FilteredIsocrystalCx& obj);

// Rescaled Newton polygon: x -> (1/d) Newt(N, phi)(dx).
ConcavePolygon newt_cx(const FilteredIsocrystalCx& obj);
// Averaged Hodge polygon: (1/d) sum of the per-embedding types.
ConcavePolygon hodge_cx(const FilteredIsocrystalCx& obj);
NewtonVector hodge_cx_vector(const FilteredIsocrystalCx& obj);

// Minimal phi- and F-stable coordinate subsets, ascending by smallest slot.
std::vector<std::vector<long>> stable_atoms(const FilteredIsocrystalCx& obj);

struct Subobject {
  std::vector<long> slots;  // sorted
  std::vector<GradedProfile> profiles;  // induced, per tau
  long t_n = 0;
  long t_h = 0;
  bool wa_member = false;  // t_h == t_n: weakly admissible inside a w.a. ambient
};

// All unions of stable atoms with their induced filtration data. Tier A
// requires the subobject table (FidelityError otherwise).
std::vector<Subobject> enumerate_standard_subobjects(const FilteredIsocrystalCx& obj);

struct WaReport {
  bool top_equality = false;
  bool subobjects_ok = false;
  bool family_complete = true;  // false when two atoms share a Newton slope
  std::optional<Subobject> violation;
  bool wa() const { return top_equality && subobjects_ok; }
};

// Weak admissibility over the standard subobject family. Sound, and complete
// unless the isocrystal carries isomorphic simple summands in distinct atoms
// (then family_complete is false and the verdict is "certified over the
// standard family").
WaReport is_weakly_admissible(const FilteredIsocrystalCx& obj);

// Concave envelope of (ht/d, -t_N/d) over the weakly admissible standard
// subobjects. Requires a weakly admissible object.
ConcavePolygon hn_polygon_cx(const FilteredIsocrystalCx& obj);
// The chain of subobjects realizing the envelope vertices.
std::vector<Subobject> hn_filtration(const FilteredIsocrystalCx& obj);

struct ChainReport {
  bool hn_le_newt = false;
  bool newt_le_hdg = false;
  bool ends_match = false;
  ConcavePolygon hn, newt, hdg;
  std::optional<Rational> witness_x;  // abscissa of the first violation
  bool ok() const { return hn_le_newt && newt_le_hdg && ends_match; }
};

ChainReport verify_inequality_chain(const FilteredIsocrystalCx& obj);

// True iff every filtration jump lies in [lo, hi].
bool jumps_within(const FilteredIsocrystalCx& obj, long lo, long hi);

// Subobject/quotient object construction on a union of atoms (slots must be
// phi- and F-stable). For tier A these require the subobject table.
FilteredIsocrystalCx sub_object(const FilteredIsocrystalCx& obj, const std::vector<long>& slots);
FilteredIsocrystalCx quotient_object(const FilteredIsocrystalCx& obj,
                                     const std::vector<long>& slots);

// Structured text dump used by the CLI.
std::string describe(const FilteredIsocrystalCx& obj);

}  // namespace isopoly
