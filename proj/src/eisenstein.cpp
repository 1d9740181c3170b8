#include "isopoly/eisenstein.hpp"

#include <algorithm>
#include <sstream>

namespace isopoly {

namespace {

// Dense polynomial helpers over Q; vectors are coefficient lists, no trailing
// zero guarantees.

std::size_t poly_degree(const std::vector<Rational>& a) {
  std::size_t d = a.size();
  while (d > 0 && a[d - 1].is_zero()) --d;
  return d;  // number of meaningful coefficients; 0 for the zero polynomial
}

std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Rational> out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// a mod b with b nonzero; also returns the quotient via *q when non-null.
std::vector<Rational> poly_mod(std::vector<Rational> a, const std::vector<Rational>& b,
                               std::vector<Rational>* q = nullptr) {
  std::size_t db = poly_degree(b);
  if (db == 0) throw DomainError("polynomial division by zero");
  std::size_t da = poly_degree(a);
  if (q) q->assign(da >= db ? da - db + 1 : 1, Rational(0));
  while (da >= db) {
    Rational coef = a[da - 1] / b[db - 1];
    std::size_t shiftd = da - db;
    if (q) (*q)[shiftd] += coef;
    for (std::size_t i = 0; i < db; ++i) a[i + shiftd] -= coef * b[i];
    da = poly_degree(a);
  }
  return a;
}

}  // namespace

EisensteinExt::EisensteinExt(long p, std::vector<Rational> coeffs) : p_(p), eis_(std::move(coeffs)) {
  if (p_ < 2) throw DomainError("p must be at least 2");
  if (eis_.size() < 2) throw DomainError("Eisenstein polynomial must have degree at least 1");
  e_ = static_cast<long>(eis_.size()) - 1;
  if (!(eis_.back() == Rational(1))) throw DomainError("Eisenstein polynomial must be monic");
  if (eis_[0].is_zero() || padic_valuation(eis_[0], p_) != 1)
    throw DomainError("Eisenstein constant term must have valuation exactly 1");
  for (long i = 1; i < e_; ++i)
    if (!eis_[i].is_zero() && padic_valuation(eis_[i], p_) < 1)
      throw DomainError("Eisenstein middle coefficients must have valuation at least 1");
  // t^e = -(E_0 + ... + E_{e-1} t^{e-1}); extend to t^{e+k}.
  std::vector<Rational> cur(e_);
  for (long i = 0; i < e_; ++i) cur[i] = -eis_[i];
  for (long k = 0; k + 1 < e_; ++k) {
    reduction_.push_back(cur);
    // multiply by t and reduce the overflow term
    std::vector<Rational> nx(e_, Rational(0));
    for (long i = 0; i + 1 < e_; ++i) nx[i + 1] = cur[i];
    const Rational& top = cur[e_ - 1];
    if (!top.is_zero())
      for (long i = 0; i < e_; ++i) nx[i] += top * -eis_[i];
    cur = std::move(nx);
  }
}

void EisensteinExt::check(const EisElem& a) const {
  if (static_cast<long>(a.c.size()) != e_)
    throw DomainError("element does not belong to this extension");
}

EisElem EisensteinExt::from_rational(const Rational& q) const {
  EisElem a = zero();
  a.c[0] = q;
  return a;
}

EisElem EisensteinExt::uniformizer() const {
  if (e_ == 1) return from_rational(-eis_[0]);  // degree 1: t = root of X + E_0
  EisElem a = zero();
  a.c[1] = 1;
  return a;
}

EisElem EisensteinExt::from_coeffs(std::vector<Rational> c) const {
  if (static_cast<long>(poly_degree(c)) > e_) c = poly_mod(std::move(c), eis_);
  EisElem a = zero();
  for (std::size_t i = 0; i < c.size() && static_cast<long>(i) < e_; ++i) a.c[i] = c[i];
  return a;
}

bool EisensteinExt::is_zero(const EisElem& a) const {
  check(a);
  for (const auto& q : a.c)
    if (!q.is_zero()) return false;
  return true;
}

EisElem EisensteinExt::add(const EisElem& a, const EisElem& b) const {
  check(a);
  check(b);
  EisElem out = a;
  for (long i = 0; i < e_; ++i) out.c[i] += b.c[i];
  return out;
}

EisElem EisensteinExt::sub(const EisElem& a, const EisElem& b) const {
  check(a);
  check(b);
  EisElem out = a;
  for (long i = 0; i < e_; ++i) out.c[i] -= b.c[i];
  return out;
}

EisElem EisensteinExt::neg(const EisElem& a) const {
  check(a);
  EisElem out = a;
  for (auto& q : out.c) q = -q;
  return out;
}

EisElem EisensteinExt::mul(const EisElem& a, const EisElem& b) const {
  check(a);
  check(b);
  std::vector<Rational> prod(2 * e_ - 1, Rational(0));
  for (long i = 0; i < e_; ++i) {
    if (a.c[i].is_zero()) continue;
    for (long j = 0; j < e_; ++j) prod[i + j] += a.c[i] * b.c[j];
  }
  EisElem out = zero();
  for (long i = 0; i < e_; ++i) out.c[i] = prod[i];
  for (long k = 0; k + 1 < e_; ++k) {
    const Rational& coef = prod[e_ + k];
    if (coef.is_zero()) continue;
    for (long i = 0; i < e_; ++i) out.c[i] += coef * reduction_[k][i];
  }
  return out;
}

EisElem EisensteinExt::mul_rat(const EisElem& a, const Rational& q) const {
  check(a);
  EisElem out = a;
  for (auto& x : out.c) x *= q;
  return out;
}

EisElem EisensteinExt::inv(const EisElem& a) const {
  check(a);
  if (is_zero(a)) throw DomainError("inverse of zero in Eisenstein extension");
  // Extended Euclid in Q[X]: u*a + v*E = g with g a nonzero constant
  // (E is irreducible over Q by the Eisenstein criterion at p).
  std::vector<Rational> r0 = eis_, r1 = a.c;
  std::vector<Rational> s0{Rational(0)}, s1{Rational(1)};
  while (true) {
    std::size_t d1 = poly_degree(r1);
    if (d1 == 0) throw DomainError("element not invertible (unexpected)");
    if (d1 == 1) break;  // r1 is a nonzero constant
    std::vector<Rational> q;
    std::vector<Rational> r2 = poly_mod(r0, r1, &q);
    // s2 = s0 - q * s1
    std::vector<Rational> qs = poly_mul(q, s1);
    std::vector<Rational> s2(std::max(s0.size(), qs.size()), Rational(0));
    for (std::size_t i = 0; i < s0.size(); ++i) s2[i] += s0[i];
    for (std::size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  Rational g = r1[0];
  EisElem out = zero();
  for (std::size_t i = 0; i < s1.size() && static_cast<long>(i) < e_; ++i) out.c[i] = s1[i] / g;
  // s1 has degree < deg(E) by the Euclid invariants, so no reduction needed.
  return out;
}

EisElem EisensteinExt::div(const EisElem& a, const EisElem& b) const { return mul(a, inv(b)); }

EisElem EisensteinExt::pow(const EisElem& a, long n) const {
  if (n < 0) return pow(inv(a), -n);
  EisElem acc = one();
  EisElem base = a;
  long k = n;
  while (k > 0) {
    if (k & 1) acc = mul(acc, base);
    base = mul(base, base);
    k >>= 1;
  }
  return acc;
}

std::optional<Rational> EisensteinExt::valuation(const EisElem& a) const {
  check(a);
  std::optional<Rational> best;
  for (long i = 0; i < e_; ++i) {
    if (a.c[i].is_zero()) continue;
    Rational v = Rational(padic_valuation(a.c[i], p_)) + Rational(i, e_);
    if (!best || v < *best) best = v;
  }
  return best;
}

bool EisensteinExt::is_integral(const EisElem& a) const {
  auto v = valuation(a);
  return !v || !(*v < Rational(0));
}

long EisensteinExt::residue(const EisElem& a) const {
  if (!is_integral(a)) throw DomainError("residue of a non-integral element");
  return padic_residue(a.c[0], p_);
}

std::string EisensteinExt::str(const EisElem& a) const {
  check(a);
  std::ostringstream os;
  os << '(';
  for (long i = 0; i < e_; ++i) {
    if (i) os << ' ';
    os << a.c[i];
  }
  os << ')';
  return os.str();
}

}  // namespace isopoly
