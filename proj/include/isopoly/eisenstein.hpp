#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isopoly/rational.hpp"

namespace isopoly {

// Element of an Eisenstein extension: polynomial in the uniformizer t of
// degree < e, stored as the coefficient list c[0] + c[1] t + ... All
// arithmetic goes through the owning EisensteinExt.
struct EisElem {
  std::vector<Rational> c;
  friend bool operator==(const EisElem&, const EisElem&) = default;
};

// Totally ramified extension K of the (symbolic) base field, presented by a
// monic Eisenstein polynomial E of degree e with p-integral rational
// coefficients: v_p(E_0) = 1, v_p(E_i) >= 1 for 0 < i < e. Elements are
// rational polynomials in the uniformizer t modulo E; the valuation
// v(sum c_i t^i) = min_i (v_p(c_i) + i/e) is exact because the monomial
// valuations are pairwise distinct. Degree 1 with E = X - p models the
// unramified base itself.
class EisensteinExt {
 public:
  EisensteinExt() : EisensteinExt(2, {Rational(-2), Rational(1)}) {}
  // coeffs = c_0..c_e with c_e = 1.
  EisensteinExt(long p, std::vector<Rational> coeffs);

  long p() const { return p_; }
  long degree() const { return e_; }
  const std::vector<Rational>& eis() const { return eis_; }

  EisElem zero() const { return EisElem{std::vector<Rational>(e_, Rational(0))}; }
  EisElem one() const { return from_rational(Rational(1)); }
  EisElem from_rational(const Rational& q) const;
  EisElem uniformizer() const;
  // c_0 + c_1 t + ...; shorter lists are zero-padded, longer ones reduced.
  EisElem from_coeffs(std::vector<Rational> c) const;

  bool is_zero(const EisElem& a) const;
  EisElem add(const EisElem& a, const EisElem& b) const;
  EisElem sub(const EisElem& a, const EisElem& b) const;
  EisElem neg(const EisElem& a) const;
  EisElem mul(const EisElem& a, const EisElem& b) const;
  EisElem mul_rat(const EisElem& a, const Rational& q) const;
  EisElem inv(const EisElem& a) const;
  EisElem div(const EisElem& a, const EisElem& b) const;
  EisElem pow(const EisElem& a, long n) const;

  // Valuation normalised at v(p) = 1, so v(t) = 1/e; nullopt for zero.
  std::optional<Rational> valuation(const EisElem& a) const;
  // v(a) >= 0, i.e. all coefficients p-integral.
  bool is_integral(const EisElem& a) const;
  // Image in the residue field F_p for an integral element.
  long residue(const EisElem& a) const;

  // "(c0 c1 ...)" with rationals in lowest terms.
  std::string str(const EisElem& a) const;

  friend bool operator==(const EisensteinExt&, const EisensteinExt&) = default;

 private:
  void check(const EisElem& a) const;
  long p_ = 2;
  long e_ = 1;
  std::vector<Rational> eis_;
  // reduction_[k] = coefficients of t^{e+k} reduced mod E, k = 0..e-2.
  std::vector<std::vector<Rational>> reduction_;
};

}  // namespace isopoly
