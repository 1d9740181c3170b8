#pragma once

#include <optional>
#include <vector>

#include "isopoly/linalg.hpp"

namespace isopoly {

// Two-level ring tower used in the comparison of Harder-Narasimhan and Hodge
// polygons: inner = W(k) tensored with O_F over an inertia embedding (a DVR,
// presented by a rational Eisenstein polynomial of degree d'), and
// outer = O_K tensor O_F, split over K by the d' embedding images of the
// inner uniformizer ("split Eisenstein pair"). All arithmetic is exact.
struct DVRTower {
  EisensteinExt base;           // O_K
  EisensteinExt inner;          // W_{O_F,v}
  std::vector<EisElem> roots;   // tau'_l(pi_F) in O_K, l = 0..d'-1, distinct

  long dprime() const { return inner.degree(); }
  void validate() const;
};

// Element of outer = O_K[X]/(eis_F): coefficients over the base, length d'.
using OuterElem = std::vector<EisElem>;

OuterElem outer_zero(const DVRTower& t);
OuterElem outer_from_inner(const DVRTower& t, const EisElem& a);
OuterElem outer_mul(const DVRTower& t, const OuterElem& a, const OuterElem& b);
// tau'_l applied to an outer element: evaluate at the l-th root.
EisElem tau_prime(const DVRTower& t, long l, const OuterElem& a);
// Multiplication-by-a as a base-linear map on outer, acting on row vectors.
KMat outer_mult_matrix(const DVRTower& t, const OuterElem& a);
// Base-matrix of an r x r outer matrix acting on row vectors of outer^r.
KMat flatten_outer_matrix(const DVRTower& t, const std::vector<std::vector<OuterElem>>& g);
// Saturated lattice P_I = outer ∩ (sum of the tau-eigenlines over I), as
// basis rows over the base; rank |I|.
KMat p_I_lattice(const DVRTower& t, const std::vector<long>& I);

struct Lemma212Result {
  Rational lg_direct = 0;   // length of g'(P_I), per-divisor lattice determinants
  Rational lg_formula = 0;  // (|I|/d') * lg Q_{O_K}, with lg Q from the tau-valuation sum
  Rational lg_q = 0;        // lg Q_{O_K} via the tau-valuation sum (2.19)
  std::vector<std::vector<Rational>> tau_valuations;  // per divisor, per l
  bool agree = false;
};

// g_inner: presentation matrix of Q over the inner ring (Q = inner^r / row
// span); must have finite-length cokernel. Computes both sides of the length
// identity; they are also returned so callers can cross-check against the
// Smith-normal-form cokernel oracle.
Lemma212Result lemma_2_12(const DVRTower& t, const KMat& g_inner, const std::vector<long>& I);

struct Remark213Report {
  EisElem tau1, tau2;
  std::optional<Rational> v1, v2;
};

// a' = sqrt(p) (X) 1 + 1 (X) pi over k = F_p, K = Q_p(sqrt p), F = Q_p(pi):
// tau'_1(a') = 2 sqrt(p) while tau'_2(a') = 0, so valuations of non-inner
// elements need not agree.
Remark213Report remark_2_13_demo(long p);

struct Lemma210Report {
  std::vector<Rational> component_lengths;  // lg_{W(k)} C_i per inertia component
  Rational total = 0;                       // = ht X
  bool constant = false;                    // all components equal total / count
};

// Components presented over the unramified base (an e = 1 extension); the
// lemma predicts constant lengths for isogenies that lift equivariantly.
Lemma210Report lemma_2_10_check(long p, const std::vector<KMat>& component_presentations);

// deg X = sum of valuations of the annihilator ideals of omega_X.
Rational degree_of_pgroup(const EisensteinExt& ring, const std::vector<EisElem>& annihilators);

}  // namespace isopoly
