#pragma once

#include <optional>
#include <vector>

#include "isopoly/polygon.hpp"

namespace isopoly {

// Linear operator in monomial form: basis slot j maps to
// units[j] * p^{exponents[j]} * b_{perm[j]}.
struct MonomialOperator {
  std::vector<long> perm;
  std::vector<long> exponents;
  std::vector<Rational> units;

  std::size_t size() const { return perm.size(); }
  void validate(long p) const;
  // Dense matrix R with R[j][perm[j]] = unit * p^exp; rows act on row vectors.
  std::vector<std::vector<Rational>> matrix(long p) const;
};

// sigma-linear bijective operator phi in monomial form over the Witt vectors
// of F_{p^f}: phi(b_j) = units[j] * p^{exponents[j]} * b_{perm[j]}, with the
// units p-adic units. Optional slot labels track the inertia components of a
// coefficient action; phi shifts the label by one.
struct StandardIsocrystal {
  long p = 2;
  long f = 1;
  std::vector<long> perm;
  std::vector<long> exponents;
  std::vector<Rational> units;
  std::optional<std::vector<long>> v_labels;
  long label_modulus = 1;

  long height() const { return static_cast<long>(perm.size()); }
  void validate() const;
  std::vector<std::vector<Rational>> matrix() const;
};

struct SlopeComponent {
  Rational slope;
  long height = 0;
  friend bool operator==(const SlopeComponent&, const SlopeComponent&) = default;
};

// v_p(det phi) = sum of the exponents.
long dimension(const StandardIsocrystal& m);

// Per permutation cycle of length s with exponent sum r: slope r/s of height
// s (phi^s scales a cycle lattice by p^r times a unit). Equal slopes merged,
// ascending order.
std::vector<SlopeComponent> slope_decomposition(const StandardIsocrystal& m);

// (-lambda_1^{(h_1)}, ..., -lambda_m^{(h_m)}).
NewtonVector newton_polygon(const StandardIsocrystal& m);

// Replaces phi by p^m phi.
StandardIsocrystal shift(const StandardIsocrystal& m, long amount);

// Slope decomposition {(1 - lambda, h_lambda)}; the monomial realization
// keeps the permutation and replaces exponents by 1 - a_j.
StandardIsocrystal dual_isocrystal(const StandardIsocrystal& m);

StandardIsocrystal direct_sum(const StandardIsocrystal& a, const StandardIsocrystal& b);

// ht(N, phi) must be a multiple of d = [F : Q_p] for an F-action to exist.
bool check_coefficient_height(const StandardIsocrystal& m, long d);

// phi-stable coordinate subsets: the cycles of perm.
std::vector<std::vector<long>> permutation_cycles(const std::vector<long>& perm);

// Newton polygon of the isocrystal phi = A * sigma over W(F_{p^f}) with
// sigma-fixed rational entries, via the p-adic Newton polygon of the
// characteristic polynomial of the f-fold linearization A^f. Validation
// oracle for the monomial route.
NewtonVector charpoly_newton(const std::vector<std::vector<Rational>>& a, long f, long p);

// Exact characteristic polynomial coefficients c_0..c_h of det(xI - A),
// c_h = 1, via the Faddeev-LeVerrier recurrence.
std::vector<Rational> charpoly(const std::vector<std::vector<Rational>>& a);

}  // namespace isopoly
