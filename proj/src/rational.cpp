#include "isopoly/rational.hpp"

#include <ostream>

namespace isopoly {

Rational Rational::parse(const std::string& s) {
  if (s.empty()) throw ParseError("empty rational literal");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw ParseError("bad rational literal: '" + s + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in rational literal: '" + s + "'");
  q.canonicalize();
  return Rational(q);
}

mpz_class Rational::floor() const {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q_.get_num().get_mpz_t(), q_.get_den().get_mpz_t());
  return f;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational pow_int(long base, long exp) {
  mpz_class b(base), r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(exp < 0 ? -exp : exp));
  if (exp >= 0) return Rational(r, 1);
  return Rational(1, r);
}

long padic_valuation(const Rational& r, long p) {
  if (r.is_zero()) throw DomainError("p-adic valuation of zero");
  if (p < 2) throw DomainError("p must be at least 2");
  mpz_class pp(p), tmp;
  long vn = static_cast<long>(mpz_remove(tmp.get_mpz_t(), r.num().get_mpz_t(), pp.get_mpz_t()));
  long vd = static_cast<long>(mpz_remove(tmp.get_mpz_t(), r.den().get_mpz_t(), pp.get_mpz_t()));
  return vn - vd;
}

bool padic_integral(const Rational& r, long p) {
  return r.is_zero() || padic_valuation(r, p) >= 0;
}

long padic_residue(const Rational& r, long p) {
  if (!padic_integral(r, p)) throw DomainError("residue of a non p-integral rational");
  mpz_class pp(p);
  mpz_class n = r.num() % pp;
  mpz_class d = r.den() % pp;
  mpz_class dinv;
  if (mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), pp.get_mpz_t()) == 0)
    throw DomainError("denominator not invertible mod p");
  mpz_class res = (n * dinv) % pp;
  if (res < 0) res += pp;
  return res.get_si();
}

}  // namespace isopoly
