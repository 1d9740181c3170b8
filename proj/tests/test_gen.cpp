#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>
#include <doctest.h>

#include <isopoly/gen.hpp>

using namespace isopoly;

TEST_CASE("wa sampler produces weakly admissible instances of both tiers") {
  Rng rng(101);
  long tier_a = 0, tier_b = 0, shapes_seen = 0;
  std::set<long> ds;
  for (int k = 0; k < 40; ++k) {
    Rng fork = rng.fork(k);
    auto obj = random_wa_instance(fork);
    CHECK(is_weakly_admissible(obj).wa());
    auto rep = verify_inequality_chain(obj);
    CHECK(rep.ok());
    (obj.tier_b() ? tier_b : tier_a)++;
    ds.insert(obj.coeff.d);
  }
  CHECK(tier_a > 0);
  CHECK(tier_b > 0);
  CHECK(ds.size() >= 2);
  (void)shapes_seen;
}

TEST_CASE("sampler is deterministic under the seed") {
  Rng a(7), b(7);
  for (int k = 0; k < 5; ++k) {
    Rng fa = a.fork(k), fb = b.fork(k);
    auto oa = random_wa_instance(fa);
    auto ob = random_wa_instance(fb);
    CHECK(to_string(newt_cx(oa)) == to_string(newt_cx(ob)));
    CHECK(to_string(hodge_cx(oa)) == to_string(hodge_cx(ob)));
  }
}

TEST_CASE("reducible sampler: break point on both polygons, split works") {
  Rng rng(55);
  for (int k = 0; k < 12; ++k) {
    Rng fork = rng.fork(k);
    auto [obj, z] = random_reducible_instance(fork);
    auto newt = newt_cx(obj);
    CHECK(newt.is_break_point(z));
    CHECK(hodge_cx(obj).lies_on(z));
    auto res = split_filtered_isocrystal(obj, z);
    CHECK(res.identities_ok);
    CHECK(res.parts_wa);
    CHECK(concat(res.before.newt, res.after.newt) == newt);
  }
}

TEST_CASE("polarised sampler: symmetric polygons, three-part split") {
  Rng rng(31);
  for (int k = 0; k < 10; ++k) {
    Rng fork = rng.fork(k);
    auto [obj, z] = random_polarised_instance(fork);
    CHECK(is_symmetric(newt_cx(obj)));
    CHECK(is_symmetric(hodge_cx(obj)));
    CHECK(is_symmetric(hn_polygon_cx(obj)));
    auto res = corollary_3_11(obj, z);
    CHECK(res.duality_ok);
    if (!res.middle_empty) CHECK(res.middle_symmetric);
  }
}

TEST_CASE("torsion profile sampler feeds the simulation") {
  Rng rng(77);
  for (int k = 0; k < 10; ++k) {
    Rng fork = rng.fork(k);
    auto [pr, z] = random_torsion_profile(fork, 8);
    CHECK(check_prop_2_8(pr).ok);
    auto trace = prop_3_2_simulate(pr, z);
    CHECK(trace.conclusive);
    CHECK(trace.a_nonincreasing);
    CHECK(trace.answer.first == Rational(pr.d) * z.x);
    CHECK(trace.answer.second == Rational(pr.d) * z.y);
  }
}

TEST_CASE("tier A projection preserves the invariants") {
  Rng rng(13);
  for (int k = 0; k < 8; ++k) {
    Rng fork = rng.fork(k);
    auto obj = random_wa_instance(fork);
    if (!obj.tier_b()) continue;
    auto ta = project_to_tier_a(obj);
    CHECK(t_H(ta) == t_H(obj));
    CHECK(hodge_cx(ta) == hodge_cx(obj));
    CHECK(hn_polygon_cx(ta) == hn_polygon_cx(obj));
  }
}
