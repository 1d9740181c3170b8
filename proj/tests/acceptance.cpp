// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
// Every tolerance is exact equality; the arithmetic is rational throughout.

#include <chrono>
#include <iostream>
#include <sstream>
#include <vector>

#include <isopoly/cli.hpp>
#include <isopoly/dvrmod.hpp>
#include <isopoly/gen.hpp>
#include <isopoly/io.hpp>

using namespace isopoly;

namespace {

int failures = 0;
std::vector<std::string> notes;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void report(int criterion, const std::string& what, bool ok, double elapsed = -1.0) {
  std::ostringstream os;
  os << (ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": " << what;
  if (elapsed >= 0) {
    os << " (" << static_cast<long>(elapsed * 1000) << " ms)";
  }
  std::cout << os.str() << "\n";
  if (!ok) ++failures;
}

ConcavePolygon nv(std::vector<Rational> entries) {
  return ConcavePolygon::from_newton_vector(NewtonVector(std::move(entries)));
}

// ---- criterion 1: Example 2.4 ----------------------------------------------

void criterion_1() {
  auto start = std::chrono::steady_clock::now();
  bool ok = true;
  for (long p : {2, 3, 5}) {
    auto [h0, h1] = example_2_4(p);
    ok = ok && h0.lattice_phi.perm == h1.lattice_phi.perm &&
         h0.lattice_phi.exponents == h1.lattice_phi.exponents &&
         h0.lattice_phi.units == h1.lattice_phi.units && h0.pi_op->perm == h1.pi_op->perm;
    auto t0 = polygons(h0);
    auto t1 = polygons(h1);
    ok = ok && t0.hdg == nv({Rational(1, 2), Rational(1, 2)});
    ok = ok && t1.hdg == nv({Rational(1), Rational(0)});
    ok = ok && verify_wa_pdiv(h0).ok() && verify_wa_pdiv(h1).ok();
  }
  double el = seconds_since(start);
  report(1, "example 2.4: equal reductions, Hdg(H0) = (1/2,1/2), Hdg(H1) = (1,0)",
         ok && el < 1.0, el);
}

// ---- criterion 2: Example 2.11 ---------------------------------------------

void criterion_2() {
  auto start = std::chrono::steady_clock::now();
  bool ok = true;
  for (long p : {2, 3, 5}) {
    auto ex = example_2_11(p);
    ok = ok && hodge_unramified(ex.m_lift.lattice_phi, 2) ==
                   NewtonVector{Rational(1), Rational(0)};
    ok = ok && hodge_unramified(ex.mprime_lift.lattice_phi, 2) ==
                   NewtonVector{Rational(1, 2), Rational(1, 2)};
    auto rep = lemma_2_10_check(p, ex.inclusion_components);
    ok = ok && rep.component_lengths == std::vector<Rational>{Rational(0), Rational(1)} &&
         !rep.constant;
  }
  double el = seconds_since(start);
  report(2, "example 2.11: unramified Hodge (1,0) and (1/2,1/2); M/M' lengths (0,1) flagged",
         ok && el < 1.0, el);
}

// ---- criterion 3: Remark 2.13 ----------------------------------------------

void criterion_3() {
  bool ok = true;
  for (long p : {3, 5, 7, 11}) {
    auto rep = remark_2_13_demo(p);
    EisensteinExt k(p, {Rational(-p), 0, 1});
    ok = ok && rep.tau1 == k.mul_rat(k.uniformizer(), Rational(2));
    ok = ok && k.is_zero(rep.tau2) && !rep.v2.has_value();
    ok = ok && rep.v1.has_value() && *rep.v1 == Rational(1, 2);
  }
  auto rep2 = remark_2_13_demo(2);
  ok = ok && rep2.v1.has_value() && *rep2.v1 == Rational(3, 2);
  report(3, "remark 2.13: tau'_1(a') = 2 sqrt(p) of valuation 1/2 (odd p), tau'_2(a') = 0", ok);
}

// ---- criterion 4: inequality-chain campaign --------------------------------

void criterion_4() {
  auto start = std::chrono::steady_clock::now();
  Rng rng(20260810);
  long count = 1000;
  long pass = 0, tier_a = 0, tier_b = 0;
  for (long k = 0; k < count; ++k) {
    Rng fork = rng.fork(k);
    auto obj = random_wa_instance(fork);
    auto rep = verify_inequality_chain(obj);
    if (rep.ok()) ++pass;
    (obj.tier_b() ? tier_b : tier_a)++;
  }
  double el = seconds_since(start);
  std::ostringstream what;
  what << "chain campaign: HN <= Newt <= Hdg on " << pass << "/" << count
       << " seeded instances (tier A " << tier_a << ", tier B " << tier_b << ")";
  report(4, what.str(), pass == count && tier_a > 0 && tier_b > 0 && el < 60.0, el);
}

// ---- criterion 5: split correctness ----------------------------------------

void criterion_5() {
  auto start = std::chrono::steady_clock::now();
  Rng rng(5150);
  long count = 200;
  long pass = 0;
  for (long k = 0; k < count; ++k) {
    Rng fork = rng.fork(k);
    auto [obj, z] = random_reducible_instance(fork);
    auto res = split_filtered_isocrystal(obj, z);
    // identities_ok already compares the brute-force part recomputation
    // against the restriction/rest of the originals
    bool good = res.identities_ok && res.parts_wa;
    good = good && concat(res.before.newt, res.after.newt) == newt_cx(obj);
    good = good && concat(res.before.hdg, res.after.hdg) == hodge_cx(obj);
    good = good && concat(res.before.hn, res.after.hn) == hn_polygon_cx(obj);
    if (good) ++pass;
  }
  double el = seconds_since(start);
  std::ostringstream what;
  what << "split correctness on " << pass << "/" << count << " reducible instances";
  report(5, what.str(), pass == count, el);
}

// ---- criterion 6: duality suite --------------------------------------------

void criterion_6() {
  auto start = std::chrono::steady_clock::now();
  Rng rng(66);
  bool ok = true;
  for (long k = 0; k < 10000; ++k) {
    Rng fork = rng.fork(k);
    auto poly = random_polygon(fork);
    if (!(dual(dual(poly)) == poly)) ok = false;
  }
  long pass = 0, count = 50;
  for (long k = 0; k < count; ++k) {
    Rng fork = rng.fork(1000000 + k);
    auto [obj, z] = random_polarised_instance(fork);
    bool sym = is_symmetric(newt_cx(obj)) && is_symmetric(hodge_cx(obj)) &&
               is_symmetric(hn_polygon_cx(obj));
    auto res = corollary_3_11(obj, z);
    if (sym && res.duality_ok && (res.middle_empty || res.middle_symmetric)) ++pass;
  }
  double el = seconds_since(start);
  std::ostringstream what;
  what << "duality: involution on 10^4 polygons, part3 = dual(part1) on " << pass << "/"
       << count << " polarised splits";
  report(6, what.str(), ok && pass == count, el);
}

// ---- criterion 7: lemma 2.12 -----------------------------------------------

void criterion_7() {
  auto start = std::chrono::steady_clock::now();
  Rng rng(712);
  long done = 0, pass = 0;
  std::uint64_t attempt = 0;
  long primes[3] = {2, 3, 5};
  while (done < 100) {
    Rng fork = rng.fork(attempt++);
    long p = primes[fork.range(0, 2)];
    DVRTower t;
    std::vector<Rational> quad{Rational(-p), 0, 1};
    long flavor = fork.range(0, 2);
    if (flavor == 0) {
      t.base = EisensteinExt(p, quad);
      t.inner = EisensteinExt(p, quad);
      EisElem rt = t.base.uniformizer();
      t.roots = {rt, t.base.neg(rt)};
    } else if (flavor == 1) {
      t.base = EisensteinExt(p, quad);
      t.inner = EisensteinExt(p, {Rational(-p), 1});
      t.roots = {t.base.from_rational(Rational(p))};
    } else {
      long gamma = fork.coin() ? 1 : p + 1;
      long a = fork.coin() ? 1 : p + 1;
      t.base = EisensteinExt(p, {Rational(-p * gamma), 0, 0, 0, 1});
      Rational b(p * fork.range(1, 2));
      t.inner = EisensteinExt(p, {b * b - Rational(a * a * p * gamma), Rational(-2) * b, 1});
      EisElem at2 = t.base.mul_rat(t.base.pow(t.base.uniformizer(), 2), Rational(a));
      EisElem bb = t.base.from_rational(b);
      t.roots = {t.base.add(bb, at2), t.base.sub(bb, at2)};
    }
    t.validate();
    long r = fork.range(1, 3);
    KMat g(r, KVec(r, t.inner.zero()));
    for (long i = 0; i < r; ++i)
      for (long j = 0; j < r; ++j)
        g[i][j] = t.inner.from_coeffs(
            {Rational(fork.range(0, 2 * p)), Rational(fork.range(0, p))});
    if (t.inner.is_zero(k_det(t.inner, g))) continue;
    // snf cokernel oracle over the base
    long r_ = r;
    std::vector<std::vector<OuterElem>> gouter(r_, std::vector<OuterElem>(r_));
    for (long i = 0; i < r_; ++i)
      for (long j = 0; j < r_; ++j) gouter[i][j] = outer_from_inner(t, g[i][j]);
    Rational lg_q_snf = cokernel_length(t.base, flatten_outer_matrix(t, gouter));
    bool good = true;
    long dp = t.dprime();
    for (long mask = 0; mask < (1 << dp); ++mask) {
      std::vector<long> I;
      for (long l = 0; l < dp; ++l)
        if (mask & (1 << l)) I.push_back(l);
      auto res = lemma_2_12(t, g, I);
      if (!res.agree || !(res.lg_direct == res.lg_formula) || !(res.lg_q == lg_q_snf))
        good = false;
    }
    if (good) ++pass;
    ++done;
  }
  double el = seconds_since(start);
  std::ostringstream what;
  what << "lemma 2.12: lg_direct = lg_formula = snf oracle on " << pass
       << "/100 instances, all embedding subsets";
  report(7, what.str(), pass == 100, el);
}

// ---- criterion 8: prop 3.2 simulation --------------------------------------

void criterion_8() {
  auto start = std::chrono::steady_clock::now();
  Rng rng(832);
  long count = 50, pass = 0;
  for (long k = 0; k < count; ++k) {
    Rng fork = rng.fork(k);
    auto [profile, z] = random_torsion_profile(fork, 8);
    auto trace = prop_3_2_simulate(profile, z);
    bool good = trace.a_nonincreasing && trace.conclusive &&
                trace.answer.first == Rational(profile.d) * z.x &&
                trace.answer.second == Rational(profile.d) * z.y;
    if (good) ++pass;
  }
  double el = seconds_since(start);
  std::ostringstream what;
  what << "prop 3.2 simulation stabilizes to d*z on " << pass << "/" << count
       << " depth-8 profiles";
  report(8, what.str(), pass == count, el);
}

// ---- criterion 9: prop 2.8 / 2.14 violations -------------------------------

void criterion_9() {
  Rng rng(99);
  bool generated_ok = true;
  for (long k = 0; k < 25; ++k) {
    Rng fork = rng.fork(k);
    auto [profile, z] = random_torsion_profile(fork, 6);
    if (!check_prop_2_8(profile).ok) generated_ok = false;
  }

  auto synthetic = [](long depth) {
    TorsionProfile pr;
    pr.n = 3;
    pr.d = 1;
    pr.e = 4;
    pr.hn_limit = nv({1, Rational(1, 2), Rational(1, 2)});
    for (long i = 1; i <= depth; ++i)
      pr.levels[i] = ConcavePolygon::from_vertices(
          {{0, 0},
           {Rational(i), Rational(i)},
           {Rational(2 * i), Rational(3 * i, 2) + Rational(1, 4)},
           {Rational(3 * i), Rational(2 * i)}});
    return pr;
  };

  long caught = 0;
  // fixture 1: monotonicity violated at x = 2 (renormalised level 2 above level 1)
  {
    auto pr = synthetic(4);
    pr.levels[1] = nv({1, Rational(1, 2), Rational(1, 2)});
    auto rep = check_prop_2_8(pr);
    if (!rep.ok && rep.failing_x && *rep.failing_x == Rational(2)) ++caught;
  }
  // fixture 2: limit polygon above a level at x = 2
  {
    auto pr = synthetic(3);
    pr.hn_limit = nv({1, Rational(3, 4), Rational(1, 4)});
    auto rep = check_prop_2_8(pr);
    if (!rep.ok && rep.failing_x && *rep.failing_x == Rational(2)) ++caught;
  }
  // fixture 3: level-1 slope escapes [0, 1] on the first segment
  {
    TorsionProfile pr;
    pr.n = 3;
    pr.d = 1;
    pr.e = 4;
    pr.hn_limit = nv({Rational(3, 2), Rational(1, 2), 0});
    pr.levels[1] = nv({Rational(3, 2), Rational(1, 2), 0});
    auto rep = check_prop_2_8(pr);
    if (!rep.ok && rep.failing_x && *rep.failing_x == Rational(0)) ++caught;
  }
  // fixture 4: end-value mismatch at level 2, reported at the renormalised
  // domain end n = 3
  {
    auto pr = synthetic(2);
    pr.levels[2] = ConcavePolygon::from_vertices(
        {{0, 0}, {2, 2}, {4, Rational(7, 2)}, {6, Rational(9, 2)}});
    auto rep = check_prop_2_8(pr);
    if (!rep.ok && rep.failing_x && *rep.failing_x == Rational(3)) ++caught;
  }
  // fixture 5: prop 2.14 violation at x = 1
  {
    auto pr = synthetic(2);
    auto rep = check_prop_2_14(pr, nv({Rational(3, 4), Rational(3, 4), Rational(1, 2)}));
    if (!rep.ok && rep.failing_x && *rep.failing_x == Rational(1)) ++caught;
  }
  bool pass214 = check_prop_2_14(synthetic(3), nv({1, 1, 0})).ok;
  std::ostringstream what;
  what << "prop 2.8/2.14: generated profiles pass, " << caught
       << "/5 violation fixtures rejected at the right abscissa";
  report(9, what.str(), generated_ok && pass214 && caught == 5);
}

// ---- criterion 10: charpoly oracle -----------------------------------------

void criterion_10() {
  Rng rng(1010);
  long pass = 0, count = 100;
  long primes[3] = {2, 3, 5};
  for (long k = 0; k < count; ++k) {
    Rng fork = rng.fork(k);
    long p = primes[fork.range(0, 2)];
    long f = fork.range(1, 3);
    long h = fork.range(1, 6);
    StandardIsocrystal m;
    m.p = p;
    m.f = f;
    std::vector<long> perm(h);
    for (long i = 0; i < h; ++i) perm[i] = i;
    for (long i = h - 1; i > 0; --i) std::swap(perm[i], perm[fork.range(0, i)]);
    m.perm = perm;
    for (long i = 0; i < h; ++i) {
      m.exponents.push_back(fork.range(0, 3));
      long u = fork.range(1, 4);
      while (u % p == 0) ++u;
      m.units.push_back(fork.coin() ? Rational(u) : Rational(-u));
    }
    if (charpoly_newton(m.matrix(), m.f, m.p) == newton_polygon(m)) ++pass;
  }
  std::ostringstream what;
  what << "charpoly route equals the monomial route on " << pass << "/" << count
       << " matrices, f in {1,2,3}";
  report(10, what.str(), pass == count);
}

// ---- criterion 11: CLI determinism -----------------------------------------

void criterion_11() {
  auto start = std::chrono::steady_clock::now();
  std::vector<std::string> args{"fuzz", "chain", "--count", "100", "--seed", "42"};
  std::ostringstream out1, err1, out2, err2;
  int rc1 = run_cli(args, out1, err1);
  int rc2 = run_cli(args, out2, err2);
  bool ok = rc1 == 0 && rc2 == 0 && out1.str() == out2.str() && err1.str() == err2.str() &&
            out1.str() == "HN <= Newt <= Hdg: 100/100\n";
  double el = seconds_since(start);
  report(11, "cli determinism: fuzz chain --count 100 --seed 42 twice, byte-identical",
         ok, el);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  if (failures == 0) {
    std::cout << "all criteria passed\n";
    return 0;
  }
  std::cout << failures << " criteria failed\n";
  return 1;
}
