#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "isopoly/errors.hpp"

namespace isopoly {

// Arbitrary-precision rational, always reduced with positive denominator.
// Thin value wrapper around GMP's mpq_class; every constructor canonicalizes.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(long n) : q_(n) {}                  // NOLINT: implicit by design
  Rational(int n) : q_(n) {}                   // NOLINT
  Rational(long num, long den) : q_(num, den) { canon(); }
  Rational(const mpz_class& num, const mpz_class& den) : q_(num, den) { canon(); }
  explicit Rational(const mpq_class& q) : q_(q) { canon(); }

  // Parses "p", "-p" or "p/q" in base 10.
  static Rational parse(const std::string& s);

  const mpz_class& num() const { return q_.get_num(); }
  const mpz_class& den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  std::string str() const { return q_.get_str(); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DomainError("rational division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.q_.get_mpq_t(), b.q_.get_mpq_t()) != 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = mpq_cmp(a.q_.get_mpq_t(), b.q_.get_mpq_t());
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  // Floor as an integer; exact.
  mpz_class floor() const;

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  void canon() {
    if (q_.get_den() == 0) throw DomainError("rational with zero denominator");
    q_.canonicalize();
  }
  mpq_class q_;
};

// p^k for integer k (k may be negative).
Rational pow_int(long base, long exp);

// p-adic valuation of a nonzero rational; throws DomainError on zero input.
long padic_valuation(const Rational& r, long p);

// True if v_p(r) >= 0 (r == 0 counts as integral).
bool padic_integral(const Rational& r, long p);

// Residue of a p-integral rational in {0, ..., p-1}; throws if not integral.
long padic_residue(const Rational& r, long p);

}  // namespace isopoly
