#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <isopoly/filisoc.hpp>

using namespace isopoly;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }

// The two lifts of Example 2.4 as filtered isocrystals, built by hand here
// (the dieudonne module has its own constructors): D' = D + D over
// F = Q_p(pi), pi^2 = p, with phi already shifted to slopes -1/2.
FilteredIsocrystalCx ex24(long p, bool h0) {
  StandardIsocrystal m;
  m.p = p;
  m.f = 1;
  m.perm = {1, 0, 3, 2};
  m.exponents = {-1, 0, -1, 0};
  m.units = {1, 1, 1, 1};
  MonomialOperator pi{{1, 0, 3, 2}, {0, 1, 0, 1}, {1, 1, 1, 1}};
  CoefficientField f{2, 2, 1, {q(-p), 0, 1}, std::nullopt};
  EisensteinExt base(p, {q(-p), 0, 1});
  EisElem rt = base.uniformizer();
  std::vector<EisElem> roots{rt, base.neg(rt)};
  // v0 = sqrt(p) e1 + e2 per copy; v1 = -sqrt(p) e1 + e2
  KVec v0a{rt, base.one(), base.zero(), base.zero()};
  KVec v0b{base.zero(), base.zero(), rt, base.one()};
  KVec v1b{base.zero(), base.zero(), base.neg(rt), base.one()};
  KMat fil0{v0a, h0 ? v0b : v1b};
  KMat full;
  for (long j = 0; j < 4; ++j) {
    KVec row(4, base.zero());
    row[j] = base.one();
    full.push_back(std::move(row));
  }
  return make_tier_b(m, f, pi, base, roots, {{-1, full}, {0, fil0}});
}

// Worked split instance: d = 1, N = A + B with A of slope -1 (one slot) and
// B of slope -1/2 (one 2-cycle), Fil^0 = span(b2 + b3).
FilteredIsocrystalCx worked_split(long p) {
  StandardIsocrystal m;
  m.p = p;
  m.f = 1;
  m.perm = {0, 2, 1};
  m.exponents = {-1, -1, 0};
  m.units = {1, 1, 1};
  CoefficientField f = CoefficientField::trivial(p);
  EisensteinExt base(p, {q(-p), 1});
  KMat full;
  for (long j = 0; j < 3; ++j) {
    KVec row(3, base.zero());
    row[j] = base.one();
    full.push_back(std::move(row));
  }
  KMat fil0{{base.zero(), base.one(), base.one()}};
  return make_tier_b(m, f, std::nullopt, base, {}, {{-1, full}, {0, fil0}});
}

}  // namespace

TEST_CASE("example 2.4: eigenspace decomposition drives the Hodge polygon") {
  for (long p : {2, 3, 5}) {
    auto h0 = ex24(p, true);
    auto h1 = ex24(p, false);
    CHECK(t_N(h0) == -2);
    CHECK(t_H(h0) == -2);
    CHECK(t_N(h1) == -2);
    CHECK(t_H(h1) == -2);
    CHECK(newt_cx(h0) == ConcavePolygon::from_newton_vector(NewtonVector{q(1, 2), q(1, 2)}));
    CHECK(hodge_cx_vector(h0) == NewtonVector{q(1, 2), q(1, 2)});
    CHECK(hodge_cx_vector(h1) == NewtonVector{q(1), q(0)});
    // per-embedding profiles: H0 puts both lines in one eigenspace
    auto pr0 = hodge_profiles(h0);
    CHECK(pr0[0] == GradedProfile(std::map<long, long>{{0, 2}}));
    CHECK(pr0[1] == GradedProfile(std::map<long, long>{{-1, 2}}));
    auto pr1 = hodge_profiles(h1);
    CHECK(pr1[0] == GradedProfile(std::map<long, long>{{-1, 1}, {0, 1}}));
    CHECK(pr1[1] == GradedProfile(std::map<long, long>{{-1, 1}, {0, 1}}));
  }
}

TEST_CASE("example 2.4: weak admissibility and Harder-Narasimhan") {
  auto h0 = ex24(3, true);
  auto rep = is_weakly_admissible(h0);
  CHECK(rep.wa());
  CHECK(!rep.family_complete);  // two isomorphic copies of D
  CHECK(hn_polygon_cx(h0) ==
        ConcavePolygon::from_newton_vector(NewtonVector{q(1, 2), q(1, 2)}));
  auto h1 = ex24(3, false);
  CHECK(is_weakly_admissible(h1).wa());
  CHECK(hn_polygon_cx(h1) ==
        ConcavePolygon::from_newton_vector(NewtonVector{q(1, 2), q(1, 2)}));
  auto chain0 = verify_inequality_chain(h0);
  CHECK(chain0.ok());
  auto chain1 = verify_inequality_chain(h1);
  CHECK(chain1.ok());
  // subobject family: 0, copy1, copy2, everything
  CHECK(enumerate_standard_subobjects(h0).size() == 4);
}

TEST_CASE("tau bases are eigenvectors") {
  auto h1 = ex24(5, false);
  auto b0 = tau_space_basis(h1, 0);
  CHECK(b0.size() == 2);
  // each basis row v satisfies v . op = root * v
  KMat opmat = k_from_rational(h1.base, h1.pi_op->matrix(5));
  KMat image = k_mul(h1.base, b0, opmat);
  for (std::size_t i = 0; i < b0.size(); ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(image[i][j] == h1.base.mul(h1.pi_roots[0], b0[i][j]));
}

TEST_CASE("worked split instance: polygons and filtration") {
  auto obj = worked_split(3);
  CHECK(t_N(obj) == -2);
  CHECK(t_H(obj) == -2);
  auto newt = newt_cx(obj);
  CHECK(newt == ConcavePolygon::from_newton_vector(NewtonVector{q(1), q(1, 2), q(1, 2)}));
  CHECK(hodge_cx_vector(obj) == NewtonVector{q(1), q(1), q(0)});
  auto rep = is_weakly_admissible(obj);
  CHECK(rep.wa());
  CHECK(rep.family_complete);
  CHECK(hn_polygon_cx(obj) ==
        ConcavePolygon::from_newton_vector(NewtonVector{q(1), q(1, 2), q(1, 2)}));
  auto chain = verify_inequality_chain(obj);
  CHECK(chain.ok());
  // HN filtration: A = slot 0, then everything
  auto filt = hn_filtration(obj);
  REQUIRE(filt.size() == 2);
  CHECK(filt[0].slots == std::vector<long>{0});
  CHECK(filt[1].slots == std::vector<long>{0, 1, 2});
  // graded slopes strictly decreasing and reassembling the polygon
  auto hn = hn_polygon_cx(obj);
  Rational prev_x = 0, prev_y = 0;
  Rational last_slope;
  bool first = true;
  for (const auto& s : filt) {
    Rational x(static_cast<long>(s.slots.size()));
    Rational y(-s.t_n);
    Rational slope = (y - prev_y) / (x - prev_x);
    if (!first) CHECK(slope < last_slope);
    first = false;
    last_slope = slope;
    CHECK(hn.lies_on({x, y}));
    prev_x = x;
    prev_y = y;
  }
}

TEST_CASE("sub and quotient objects") {
  auto obj = worked_split(3);
  auto sub = sub_object(obj, {0});
  CHECK(sub.height() == 1);
  CHECK(t_N(sub) == -1);
  CHECK(t_H(sub) == -1);
  CHECK(hodge_cx_vector(sub) == NewtonVector{q(1)});
  auto quot = quotient_object(obj, {0});
  CHECK(quot.height() == 2);
  CHECK(t_N(quot) == -1);
  CHECK(t_H(quot) == -1);
  CHECK(hodge_cx_vector(quot) == NewtonVector{q(1), q(0)});
  CHECK(newt_cx(quot) == ConcavePolygon::from_newton_vector(NewtonVector{q(1, 2), q(1, 2)}));
  CHECK_THROWS_AS(sub_object(obj, {1}), DomainError);  // not phi-stable
}

TEST_CASE("degree additivity across sub and quotient") {
  auto obj = ex24(3, false);
  auto subs = enumerate_standard_subobjects(obj);
  for (const auto& s : subs) {
    if (s.slots.empty() || static_cast<long>(s.slots.size()) == obj.height()) continue;
    auto sub = sub_object(obj, s.slots);
    auto quot = quotient_object(obj, s.slots);
    CHECK(t_H(sub) + t_H(quot) == t_H(obj));
    CHECK(t_N(sub) + t_N(quot) == t_N(obj));
  }
}

TEST_CASE("the section-2 counterexample: simple but out of the jump gate") {
  // simple isotypical, height 2, dimension -1, jumps {-2, 1}
  StandardIsocrystal m;
  m.p = 3;
  m.f = 1;
  m.perm = {1, 0};
  m.exponents = {-1, 0};
  m.units = {1, 1};
  EisensteinExt base(3, {q(-3), 1});
  KMat full{{base.one(), base.zero()}, {base.zero(), base.one()}};
  KMat fil1{{base.one(), base.one()}};
  auto obj = make_tier_b(m, CoefficientField::trivial(3), std::nullopt, base, {},
                         {{-2, full}, {1, fil1}});
  CHECK(t_N(obj) == -1);
  CHECK(t_H(obj) == -2 + 1);
  auto rep = is_weakly_admissible(obj);
  CHECK(rep.wa());  // simple object with t_H = t_N
  CHECK(!jumps_within(obj, -1, 0));  // flagged by the model gate
  CHECK(jumps_within(ex24(3, true), -1, 0));
}

TEST_CASE("tier A objects with subobject tables") {
  // Tier A mirror of the worked split instance.
  StandardIsocrystal m;
  m.p = 3;
  m.f = 1;
  m.perm = {0, 2, 1};
  m.exponents = {-1, -1, 0};
  m.units = {1, 1, 1};
  std::vector<GradedProfile> profiles{GradedProfile(std::map<long, long>{{-1, 2}, {0, 1}})};
  std::map<std::vector<long>, std::vector<GradedProfile>> table;
  table[{0}] = {GradedProfile(std::map<long, long>{{-1, 1}})};
  table[{1, 2}] = {GradedProfile(std::map<long, long>{{-1, 1}, {0, 1}})};
  auto obj = make_tier_a(m, CoefficientField::trivial(3), std::nullopt, profiles, table);
  CHECK(t_H(obj) == -2);
  CHECK(is_weakly_admissible(obj).wa());
  CHECK(hn_polygon_cx(obj) ==
        ConcavePolygon::from_newton_vector(NewtonVector{q(1), q(1, 2), q(1, 2)}));
  // without the table, enumeration must refuse
  auto bare = make_tier_a(m, CoefficientField::trivial(3), std::nullopt, profiles, {});
  CHECK_THROWS_AS(enumerate_standard_subobjects(bare), FidelityError);
}

TEST_CASE("non weakly admissible input is rejected for HN") {
  StandardIsocrystal m;
  m.p = 3;
  m.f = 1;
  m.perm = {0, 1};
  m.exponents = {0, 0};
  m.units = {1, 1};
  EisensteinExt base(3, {q(-3), 1});
  KMat full{{base.one(), base.zero()}, {base.zero(), base.one()}};
  // jumps {1}: t_H = 2 > 0 = t_N
  auto obj = make_tier_b(m, CoefficientField::trivial(3), std::nullopt, base, {},
                         {{1, full}});
  CHECK(!is_weakly_admissible(obj).wa());
  CHECK_THROWS_AS(hn_polygon_cx(obj), DomainError);
}
