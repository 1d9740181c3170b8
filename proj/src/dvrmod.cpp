#include "isopoly/dvrmod.hpp"

#include <algorithm>

namespace isopoly {

void DVRTower::validate() const {
  if (base.p() != inner.p()) throw DomainError("tower levels live over different primes");
  long dp = dprime();
  if (static_cast<long>(roots.size()) != dp)
    throw DomainError("tower needs one root per embedding");
  for (const auto& r : roots) {
    // eis_F(r) = 0 in the base
    EisElem acc = base.zero();
    EisElem pw = base.one();
    for (const auto& c : inner.eis()) {
      acc = base.add(acc, base.mul_rat(pw, c));
      pw = base.mul(pw, r);
    }
    if (!base.is_zero(acc)) throw DomainError("claimed root does not satisfy the Eisenstein polynomial");
    auto v = base.valuation(r);
    if (!v || !(*v == Rational(1, dp)))
      throw DomainError("root of an Eisenstein polynomial must have valuation 1/d'");
  }
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (roots[i] == roots[j]) throw DomainError("tower roots must be distinct");
}

OuterElem outer_zero(const DVRTower& t) {
  return OuterElem(t.dprime(), t.base.zero());
}

OuterElem outer_from_inner(const DVRTower& t, const EisElem& a) {
  OuterElem out = outer_zero(t);
  for (long i = 0; i < t.dprime(); ++i) out[i] = t.base.from_rational(a.c[i]);
  return out;
}

OuterElem outer_mul(const DVRTower& t, const OuterElem& a, const OuterElem& b) {
  long dp = t.dprime();
  std::vector<EisElem> prod(2 * dp - 1, t.base.zero());
  for (long i = 0; i < dp; ++i) {
    if (t.base.is_zero(a[i])) continue;
    for (long j = 0; j < dp; ++j)
      prod[i + j] = t.base.add(prod[i + j], t.base.mul(a[i], b[j]));
  }
  // reduce X^{dp+k} via the (rational) Eisenstein relation
  for (long k = 2 * dp - 2; k >= dp; --k) {
    EisElem top = prod[k];
    if (t.base.is_zero(top)) continue;
    prod[k] = t.base.zero();
    for (long i = 0; i < dp; ++i)
      prod[k - dp + i] =
          t.base.sub(prod[k - dp + i], t.base.mul_rat(top, t.inner.eis()[i]));
  }
  prod.resize(dp);
  return prod;
}

EisElem tau_prime(const DVRTower& t, long l, const OuterElem& a) {
  if (l < 0 || l >= t.dprime()) throw DomainError("embedding index out of range");
  EisElem acc = t.base.zero();
  EisElem pw = t.base.one();
  for (long i = 0; i < t.dprime(); ++i) {
    acc = t.base.add(acc, t.base.mul(a[i], pw));
    pw = t.base.mul(pw, t.roots[l]);
  }
  return acc;
}

KMat outer_mult_matrix(const DVRTower& t, const OuterElem& a) {
  long dp = t.dprime();
  KMat m(dp, KVec(dp, t.base.zero()));
  OuterElem xk = outer_zero(t);
  xk[0] = t.base.one();
  for (long k = 0; k < dp; ++k) {
    OuterElem row = outer_mul(t, xk, a);
    for (long j = 0; j < dp; ++j) m[k][j] = row[j];
    // advance xk to X^{k+1}
    OuterElem shifted = outer_zero(t);
    for (long i = 0; i + 1 < dp; ++i) shifted[i + 1] = xk[i];
    const EisElem& top = xk[dp - 1];
    if (!t.base.is_zero(top))
      for (long i = 0; i < dp; ++i)
        shifted[i] = t.base.sub(shifted[i], t.base.mul_rat(top, t.inner.eis()[i]));
    xk = std::move(shifted);
  }
  return m;
}

KMat flatten_outer_matrix(const DVRTower& t, const std::vector<std::vector<OuterElem>>& g) {
  long r = static_cast<long>(g.size());
  long dp = t.dprime();
  KMat out(r * dp, KVec(r * dp, t.base.zero()));
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < r; ++j) {
      KMat block = outer_mult_matrix(t, g[i][j]);
      for (long k = 0; k < dp; ++k)
        for (long l = 0; l < dp; ++l) out[i * dp + k][j * dp + l] = block[k][l];
    }
  return out;
}

KMat p_I_lattice(const DVRTower& t, const std::vector<long>& I) {
  long dp = t.dprime();
  std::vector<bool> in_I(dp, false);
  for (long l : I) {
    if (l < 0 || l >= dp) throw DomainError("embedding subset index out of range");
    in_I[l] = true;
  }
  // Conditions: tau'_l vanishes for l outside I. Columns of the condition
  // matrix are the Vandermonde evaluations.
  std::vector<long> outside;
  for (long l = 0; l < dp; ++l)
    if (!in_I[l]) outside.push_back(l);
  if (outside.empty()) return k_identity(t.base, dp);
  KMat cond(dp, KVec(outside.size(), t.base.zero()));
  for (long k = 0; k < dp; ++k)
    for (std::size_t c = 0; c < outside.size(); ++c)
      cond[k][c] = t.base.pow(t.roots[outside[c]], k);
  return kernel_lattice(t.base, cond);
}

Lemma212Result lemma_2_12(const DVRTower& t, const KMat& g_inner, const std::vector<long>& I) {
  long dp = t.dprime();
  Lemma212Result res;
  long r = static_cast<long>(g_inner.size());
  if (r == 0 || static_cast<long>(g_inner[0].size()) != r)
    throw DomainError("lemma 2.12 expects a square presentation matrix");
  // Rank-1 reduction: Smith normal form over the inner DVR.
  SnfResult snf = smith_normal_form(t.inner, g_inner);
  for (const auto& d : snf.divisors)
    if (t.inner.is_zero(d)) throw DomainError("cokernel must have finite length");

  KMat pi = p_I_lattice(t, I);
  long nI = static_cast<long>(pi.size());
  Rational e(t.base.degree());
  for (const auto& a : snf.divisors) {
    OuterElem ap = outer_from_inner(t, a);
    std::vector<Rational> vals;
    for (long l = 0; l < dp; ++l) {
      EisElem img = tau_prime(t, l, ap);
      auto v = t.base.valuation(img);
      if (!v) throw DomainError("tau'(a') vanishes; element is not inner-sourced");
      vals.push_back(*v);
      res.lg_q += e * *v;  // (2.19)
    }
    res.tau_valuations.push_back(std::move(vals));
    // Direct route: determinant of multiplication by a' on the lattice P_I.
    if (nI > 0) {
      KMat mult = outer_mult_matrix(t, ap);
      KMat image = k_mul(t.base, pi, mult);
      auto x = k_solve_in_rowspan(t.base, pi, image);
      if (!x) throw DomainError("P_I is not stable under the outer action (unexpected)");
      EisElem dx = k_det(t.base, *x);
      auto v = t.base.valuation(dx);
      if (!v) throw DomainError("multiplication by a' is singular on P_I (unexpected)");
      res.lg_direct += e * *v;  // (2.20)
    }
  }
  res.lg_formula = Rational(nI, dp) * res.lg_q;
  res.agree = res.lg_direct == res.lg_formula;
  return res;
}

Remark213Report remark_2_13_demo(long p) {
  std::vector<Rational> eis{Rational(-p), Rational(0), Rational(1)};  // X^2 - p
  DVRTower t;
  t.base = EisensteinExt(p, eis);
  t.inner = EisensteinExt(p, eis);
  EisElem rt = t.base.uniformizer();
  t.roots = {rt, t.base.neg(rt)};
  t.validate();
  OuterElem a = outer_zero(t);
  a[0] = rt;            // sqrt(p) (x) 1
  a[1] = t.base.one();  // 1 (x) pi
  Remark213Report rep;
  rep.tau1 = tau_prime(t, 0, a);
  rep.tau2 = tau_prime(t, 1, a);
  rep.v1 = t.base.valuation(rep.tau1);
  rep.v2 = t.base.valuation(rep.tau2);
  return rep;
}

Lemma210Report lemma_2_10_check(long p, const std::vector<KMat>& component_presentations) {
  EisensteinExt w(p, {Rational(-p), Rational(1)});
  Lemma210Report rep;
  for (const auto& m : component_presentations) {
    Rational lg = cokernel_length(w, m);
    rep.component_lengths.push_back(lg);
    rep.total += lg;
  }
  rep.constant = true;
  long dcount = static_cast<long>(component_presentations.size());
  for (const auto& lg : rep.component_lengths)
    if (!(lg * Rational(dcount) == rep.total)) rep.constant = false;
  return rep;
}

Rational degree_of_pgroup(const EisensteinExt& ring, const std::vector<EisElem>& annihilators) {
  Rational deg = 0;
  for (const auto& b : annihilators) {
    auto v = ring.valuation(b);
    if (!v) throw DomainError("zero annihilator: omega would be infinite");
    deg += *v;
  }
  return deg;
}

}  // namespace isopoly
