#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <isopoly/dieudonne.hpp>
#include <isopoly/dvrmod.hpp>

using namespace isopoly;

namespace {
Rational q(long n, long d = 1) { return Rational(n, d); }
}

TEST_CASE("example 2.4: two lifts, same reduction, different Hodge polygons") {
  for (long p : {2, 3, 5}) {
    auto [h0, h1] = example_2_4(p);
    // equal reductions: identical lattice data
    CHECK(h0.lattice_phi.perm == h1.lattice_phi.perm);
    CHECK(h0.lattice_phi.exponents == h1.lattice_phi.exponents);
    CHECK(h0.pi_op->perm == h1.pi_op->perm);
    auto t0 = polygons(h0);
    auto t1 = polygons(h1);
    CHECK(t0.hdg == ConcavePolygon::from_newton_vector(NewtonVector{q(1, 2), q(1, 2)}));
    CHECK(t1.hdg == ConcavePolygon::from_newton_vector(NewtonVector{q(1), q(0)}));
    CHECK(t0.newt == ConcavePolygon::from_newton_vector(NewtonVector{q(1, 2), q(1, 2)}));
    CHECK(t1.newt == t0.newt);
    CHECK(t0.hn == t0.newt);
    CHECK(t1.hn == t1.newt);
    // end value dim H / d = 1
    CHECK(t0.hdg.end_value() == q(1));
    CHECK(t0.newt.end_value() == q(1));
    CHECK(verify_wa_pdiv(h0).ok());
    CHECK(verify_wa_pdiv(h1).ok());
  }
}

TEST_CASE("model gates") {
  auto [h0, h1] = example_2_4(3);
  // a lift violating the reduction condition is rejected before wa
  DieudonneLift bad = h0;
  bad.fil_lattice = {bad.fil_lattice[0]};
  auto rep = verify_wa_pdiv(bad);
  CHECK(!rep.model_ok);
  // exponent out of {0,1}
  DieudonneLift bad2 = h0;
  bad2.lattice_phi.exponents = {0, 2, 0, 1};
  CHECK_THROWS_AS(to_filtered_isocrystal(bad2), ModelViolation);
  // non-integral filtration lattice
  DieudonneLift bad3 = h0;
  bad3.fil_lattice[0][0] = bad3.base.from_rational(q(1, 3));
  CHECK_THROWS_AS(to_filtered_isocrystal(bad3), ModelViolation);
  // non-summand filtration lattice
  DieudonneLift bad4 = h0;
  for (auto& x : bad4.fil_lattice[0]) x = bad4.base.mul_rat(x, q(3));
  CHECK_THROWS_AS(to_filtered_isocrystal(bad4), ModelViolation);
}

TEST_CASE("etale and multiplicative models") {
  // etale H: covariant lattice with all exponents 1 and full filtration.
  StandardIsocrystal m;
  m.p = 3;
  m.f = 1;
  m.perm = {1, 2, 0};
  m.exponents = {1, 1, 1};
  m.units = {1, 1, 1};
  EisensteinExt base(3, {q(-3), 1});
  DieudonneLift h;
  h.lattice_phi = m;
  h.coeff = CoefficientField::trivial(3);
  h.base = base;
  h.fil_lattice = k_identity(base, 3);
  CHECK(h.dim() == 0);
  auto obj = to_filtered_isocrystal(h);
  CHECK(jumps_within(obj, 0, 0));
  auto t = polygons(h);
  CHECK(t.newt == ConcavePolygon::from_newton_vector(NewtonVector{q(0), q(0), q(0)}));
  CHECK(t.hdg == t.newt);
  CHECK(verify_wa_pdiv(h).ok());
  // multiplicative H: all exponents 0, empty filtration lattice
  StandardIsocrystal mm = m;
  mm.exponents = {0, 0, 0};
  DieudonneLift hm;
  hm.lattice_phi = mm;
  hm.coeff = CoefficientField::trivial(3);
  hm.base = base;
  CHECK(hm.dim() == 3);
  auto tm = polygons(hm);
  CHECK(tm.newt == ConcavePolygon::from_newton_vector(NewtonVector{q(1), q(1), q(1)}));
  CHECK(tm.hdg == tm.newt);
  CHECK(verify_wa_pdiv(hm).ok());
}

TEST_CASE("hodge_unramified reproduces example 2.11") {
  for (long p : {2, 3, 5}) {
    auto ex = example_2_11(p);
    CHECK(hodge_unramified(ex.m_lift.lattice_phi, 2) == NewtonVector{q(1), q(0)});
    CHECK(hodge_unramified(ex.mprime_lift.lattice_phi, 2) == NewtonVector{q(1, 2), q(1, 2)});
    // etale input: all exponents 0
    StandardIsocrystal et;
    et.p = p;
    et.f = 2;
    et.perm = {1, 0};
    et.exponents = {0, 0};
    et.units = {1, 1};
    et.v_labels = std::vector<long>{0, 1};
    et.label_modulus = 2;
    CHECK(hodge_unramified(et, 2) == NewtonVector{q(0)});
  }
}

TEST_CASE("example 2.11 lifts agree with the unramified recipe") {
  auto ex = example_2_11(3);
  auto tm = polygons(ex.m_lift);
  CHECK(tm.hdg == ConcavePolygon::from_newton_vector(NewtonVector{q(1), q(0)}));
  CHECK(tm.newt == ConcavePolygon::from_newton_vector(NewtonVector{q(1, 2), q(1, 2)}));
  auto tp = polygons(ex.mprime_lift);
  CHECK(tp.hdg == ConcavePolygon::from_newton_vector(NewtonVector{q(1, 2), q(1, 2)}));
  CHECK(verify_wa_pdiv(ex.m_lift).ok());
  CHECK(verify_wa_pdiv(ex.mprime_lift).ok());
}

TEST_CASE("example 2.11 cokernel sits in one inertia component") {
  auto ex = example_2_11(5);
  auto rep = lemma_2_10_check(5, ex.inclusion_components);
  CHECK(rep.component_lengths == std::vector<Rational>{q(0), q(1)});
  CHECK(rep.total == q(1));
  CHECK(!rep.constant);
}

TEST_CASE("duality and polarisation checks") {
  auto [h0, h1] = example_2_4(3);
  auto rep0 = duality_and_polarisation_check(h0, true);
  CHECK(rep0.ok(true));
  auto rep1 = duality_and_polarisation_check(h1, true);
  CHECK(rep1.newt_dual_ok);
  CHECK(rep1.hdg_dual_ok);
  CHECK(rep1.hn_dual_ok);
  // Hdg(H1) = (1,0) is symmetric, Newt = (1/2,1/2) symmetric: polarisable
  CHECK(rep1.polarised_symmetric);
  // an asymmetric example: one slot of slope 0 plus two of slope 1/2
  StandardIsocrystal m;
  m.p = 3;
  m.f = 1;
  m.perm = {0, 2, 1};
  m.exponents = {1, 1, 0};
  m.units = {1, 1, 1};
  DieudonneLift h;
  h.lattice_phi = m;
  h.coeff = CoefficientField::trivial(3);
  h.base = EisensteinExt(3, {q(-3), 1});
  KVec r0(3, h.base.zero());
  r0[0] = h.base.one();
  KVec r1(3, h.base.zero());
  r1[1] = h.base.one();
  h.fil_lattice = {r0, r1};
  auto rep = duality_and_polarisation_check(h, true);
  CHECK(rep.newt_dual_ok);
  CHECK(rep.hdg_dual_ok);
  CHECK(rep.hn_dual_ok);
  CHECK(!rep.polarised_symmetric);
}

TEST_CASE("duality on the dual model round-trips") {
  auto [h0, h1] = example_2_4(5);
  auto once = dual_lift(h1);
  auto twice = dual_lift(once);
  CHECK(polygons(twice).hdg == polygons(h1).hdg);
  CHECK(polygons(twice).newt == polygons(h1).newt);
  // dim H + dim H^dual = ht H
  CHECK(h1.dim() + once.dim() == h1.height());
}
