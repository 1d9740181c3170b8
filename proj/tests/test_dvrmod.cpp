#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <isopoly/dvrmod.hpp>

#include "test_rng.hpp"

using namespace isopoly;

namespace {

// k = F_p, K = Q_p(sqrt p), F = Q_p(pi), pi^2 = p; roots +/- sqrt p.
DVRTower split_quadratic(long p) {
  DVRTower t;
  std::vector<Rational> eis{Rational(-p), 0, 1};
  t.base = EisensteinExt(p, eis);
  t.inner = EisensteinExt(p, eis);
  EisElem rt = t.base.uniformizer();
  t.roots = {rt, t.base.neg(rt)};
  t.validate();
  return t;
}

// Quadratic split pair over a degree-4 base: K = Q_p(t), t^4 = p gamma,
// eis_F = X^2 - 2bX + (b^2 - a^2 p gamma) with roots b +/- a t^2. gamma and
// a must be p-units and b a multiple of p for the pair to stay Eisenstein.
DVRTower split_quartic_base(long p, long gamma, long a, long b_times_p) {
  DVRTower t;
  t.base = EisensteinExt(p, {Rational(-p * gamma), 0, 0, 0, 1});
  Rational b(b_times_p * p);
  Rational c0 = b * b - Rational(a * a * p * gamma);
  t.inner = EisensteinExt(p, {c0, Rational(-2) * b, 1});
  EisElem t2 = t.base.pow(t.base.uniformizer(), 2);
  EisElem at2 = t.base.mul_rat(t2, Rational(a));
  EisElem bb = t.base.from_rational(b);
  t.roots = {t.base.add(bb, at2), t.base.sub(bb, at2)};
  t.validate();
  return t;
}

}  // namespace

TEST_CASE("remark 2.13: tau valuations differ off the inner ring") {
  for (long p : {3, 5, 7}) {
    auto rep = remark_2_13_demo(p);
    auto t = split_quadratic(p);
    // tau'_1(a') = 2 sqrt p exactly
    CHECK(rep.tau1 == t.base.mul_rat(t.base.uniformizer(), Rational(2)));
    CHECK(t.base.is_zero(rep.tau2));
    REQUIRE(rep.v1.has_value());
    CHECK(*rep.v1 == Rational(1, 2));
    CHECK(!rep.v2.has_value());
  }
  auto rep2 = remark_2_13_demo(2);
  REQUIRE(rep2.v1.has_value());
  CHECK(*rep2.v1 == Rational(3, 2));  // v(2 sqrt 2) = 1 + 1/2
}

TEST_CASE("lemma 2.12 stated oracle instance") {
  // d' = 2, a = pi, I = {tau_1}: lg Q = 2, result 1. P_I = O_K (pi + sqrt p),
  // image has length 1.
  auto t = split_quadratic(3);
  KMat g{{t.inner.uniformizer()}};
  auto r = lemma_2_12(t, g, {0});
  CHECK(r.lg_q == Rational(2));
  CHECK(r.lg_direct == Rational(1));
  CHECK(r.lg_formula == Rational(1));
  CHECK(r.agree);
  // I = all: full length; I = empty: zero
  CHECK(lemma_2_12(t, g, {0, 1}).lg_direct == Rational(2));
  CHECK(lemma_2_12(t, g, {}).lg_direct == Rational(0));
  CHECK(lemma_2_12(t, g, {}).lg_formula == Rational(0));
}

TEST_CASE("lemma 2.12 randomized identity with snf oracle") {
  TestRng rng(123);
  long primes[3] = {2, 3, 5};
  int done = 0;
  while (done < 60) {
    long p = primes[rng.range(0, 2)];
    long gamma = rng.coin() ? 1 : p + 1;
    long a_unit = rng.coin() ? 1 : p + 1;
    DVRTower t = rng.coin() ? split_quadratic(p)
                            : split_quartic_base(p, gamma, a_unit, rng.range(1, 2));
    long r = rng.range(1, 3);
    KMat g(r, KVec(r, t.inner.zero()));
    for (long i = 0; i < r; ++i)
      for (long j = 0; j < r; ++j)
        g[i][j] = t.inner.from_coeffs(
            {Rational(rng.range(0, 2 * p)), Rational(rng.range(0, p))});
    bool singular = t.inner.is_zero(k_det(t.inner, g));
    if (singular) continue;
    // snf cokernel oracle for lg Q over the base
    std::vector<std::vector<OuterElem>> gouter(r, std::vector<OuterElem>(r));
    for (long i = 0; i < r; ++i)
      for (long j = 0; j < r; ++j) gouter[i][j] = outer_from_inner(t, g[i][j]);
    Rational lg_q_snf = cokernel_length(t.base, flatten_outer_matrix(t, gouter));
    long dp = t.dprime();
    for (long mask = 0; mask < (1 << dp); ++mask) {
      std::vector<long> I;
      for (long l = 0; l < dp; ++l)
        if (mask & (1 << l)) I.push_back(l);
      auto res = lemma_2_12(t, g, I);
      CHECK(res.agree);
      CHECK(res.lg_direct == res.lg_formula);
      CHECK(res.lg_q == lg_q_snf);
      // tau valuations constant per divisor (inner-sourced elements)
      for (const auto& vals : res.tau_valuations)
        for (const auto& v : vals) CHECK(v == vals[0]);
    }
    ++done;
  }
}

TEST_CASE("lemma 2.12 image-length cross-check in original coordinates") {
  // lg g'(P_I) computed without the inner SNF: as the lattice quotient
  // (P_I + im g') / im g'.
  TestRng rng(77);
  int done = 0;
  while (done < 15) {
    auto t = split_quadratic(3);
    long r = rng.range(1, 2);
    KMat g(r, KVec(r, t.inner.zero()));
    for (long i = 0; i < r; ++i)
      for (long j = 0; j < r; ++j)
        g[i][j] = t.inner.from_coeffs({Rational(rng.range(0, 6)), Rational(rng.range(0, 3))});
    if (t.inner.is_zero(k_det(t.inner, g))) continue;
    std::vector<std::vector<OuterElem>> gouter(r, std::vector<OuterElem>(r));
    for (long i = 0; i < r; ++i)
      for (long j = 0; j < r; ++j) gouter[i][j] = outer_from_inner(t, g[i][j]);
    KMat flat = flatten_outer_matrix(t, gouter);
    long dp = t.dprime();
    KMat p1 = p_I_lattice(t, {0});
    // embed the rank-1 P_I diagonally in each outer coordinate
    KMat pibig;
    for (long i = 0; i < r; ++i)
      for (const auto& row : p1) {
        KVec big(r * dp, t.base.zero());
        for (long l = 0; l < dp; ++l) big[i * dp + l] = row[l];
        pibig.push_back(std::move(big));
      }
    KMat stacked = flat;
    for (const auto& row : pibig) stacked.push_back(row);
    Rational image_len = cokernel_length(t.base, flat) - cokernel_length(t.base, stacked);
    auto res = lemma_2_12(t, g, {0});
    CHECK(res.lg_direct == image_len);
    ++done;
  }
}

TEST_CASE("lemma 2.10 components") {
  EisensteinExt w(3, {Rational(-3), 1});
  // Example 2.11's M/M': component 0 is diag(1,1), component 1 is diag(3,1).
  KMat c0{{w.one(), w.zero()}, {w.zero(), w.one()}};
  KMat c1{{w.from_rational(3), w.zero()}, {w.zero(), w.one()}};
  auto rep = lemma_2_10_check(3, {c0, c1});
  CHECK(rep.component_lengths == std::vector<Rational>{Rational(0), Rational(1)});
  CHECK(rep.total == Rational(1));
  CHECK(!rep.constant);
  // equal components pass
  auto rep2 = lemma_2_10_check(3, {c1, c1});
  CHECK(rep2.constant);
  // a single component is vacuously constant
  CHECK(lemma_2_10_check(3, {c1}).constant);
}

TEST_CASE("degree of a p-group") {
  auto k = EisensteinExt(3, {Rational(-3), 0, 1});
  EisElem t = k.uniformizer();
  CHECK(degree_of_pgroup(k, {t, k.from_rational(3)}) == Rational(3, 2));
  CHECK(degree_of_pgroup(k, {}) == Rational(0));
  CHECK_THROWS_AS(degree_of_pgroup(k, {k.zero()}), DomainError);
  // deg X + deg X^dual = ht X on paired annihilator data
  std::vector<EisElem> x{t, k.from_rational(3)};
  std::vector<EisElem> xdual{t};  // lengths 3/2 + 1/2 = 2 = ht
  CHECK(degree_of_pgroup(k, x) + degree_of_pgroup(k, xdual) == Rational(2));
}
