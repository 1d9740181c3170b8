#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <isopoly/polygon.hpp>

#include "test_rng.hpp"

using namespace isopoly;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }

// Independent envelope oracle: the upper hull value at x is the maximum over
// all chords between points straddling x.
Rational envelope_oracle(const std::vector<Point>& pts, const Rational& x) {
  Rational best;
  bool found = false;
  for (const auto& a : pts)
    for (const auto& b : pts) {
      if (a.x > x || b.x < x) continue;
      Rational val = (a.x == b.x)
                         ? (a.y > b.y ? a.y : b.y)
                         : a.y + (b.y - a.y) / (b.x - a.x) * (x - a.x);
      if (!found || best < val) {
        best = val;
        found = true;
      }
    }
  REQUIRE(found);
  return best;
}

ConcavePolygon random_polygon(TestRng& rng, long max_segments = 5) {
  long segs = rng.range(0, max_segments);
  std::vector<std::pair<Rational, Rational>> runs;
  Rational slope = Rational(rng.range(-4, 8), rng.range(1, 4));
  for (long s = 0; s < segs; ++s) {
    Rational width = Rational(rng.range(1, 5), rng.range(1, 3));
    runs.emplace_back(slope, width);
    slope -= Rational(rng.range(1, 6), rng.range(1, 4));
  }
  return ConcavePolygon::from_slopes(runs);
}

}  // namespace

TEST_CASE("from_slopes assembles segments") {
  auto p = ConcavePolygon::from_slopes({{q(1), q(2)}, {q(0), q(1)}});
  CHECK(p.vertices() == std::vector<Point>{{q(0), q(0)}, {q(2), q(2)}, {q(3), q(2)}});

  auto empty = ConcavePolygon::from_slopes({});
  CHECK(empty.domain_end() == q(0));
  CHECK(empty.is_empty_domain());

  auto p2 = ConcavePolygon::from_slopes({{q(1), q(1)}, {q(1, 2), q(2)}});
  CHECK(p2.vertices() == std::vector<Point>{{q(0), q(0)}, {q(1), q(1)}, {q(3), q(2)}});

  CHECK_THROWS_AS(ConcavePolygon::from_slopes({{q(0), q(1)}, {q(1), q(1)}}), DomainError);
  CHECK_THROWS_AS(ConcavePolygon::from_slopes({{q(1), q(0)}}), DomainError);
}

TEST_CASE("eval interpolates") {
  auto p = ConcavePolygon::from_vertices({{q(0), q(0)}, {q(1), q(1)}, {q(3), q(2)}});
  CHECK(p.eval(q(2)) == q(3, 2));
  CHECK(p.eval(q(0)) == q(0));
  auto nv = ConcavePolygon::from_newton_vector(NewtonVector{q(1), q(1, 2), q(1, 2)});
  CHECK(nv.eval(q(3)) == q(2));
  CHECK_THROWS_AS(p.eval(q(4)), DomainError);
  CHECK_THROWS_AS(p.eval(q(-1)), DomainError);
}

TEST_CASE("leq partial order") {
  auto a = ConcavePolygon::from_newton_vector(NewtonVector{q(1, 2), q(1, 2)});
  auto b = ConcavePolygon::from_newton_vector(NewtonVector{q(1), q(0)});
  CHECK(leq(a, b));
  CHECK(!leq(b, a));
  CHECK(leq(a, a));
  auto c = ConcavePolygon::from_newton_vector(NewtonVector{q(1), q(0), q(0)});
  auto d = ConcavePolygon::from_newton_vector(NewtonVector{q(1, 2), q(1, 2), q(1, 2)});
  CHECK(!leq(c, d));  // end points differ
  CHECK_THROWS_AS(leq(a, c), DomainError);
}

TEST_CASE("concave envelope matches chord oracle") {
  auto e1 = concave_envelope({{q(0), q(0)}, {q(1), q(1)}, {q(2), q(1)}});
  CHECK(e1 == ConcavePolygon::from_slopes({{q(1), q(1)}, {q(0), q(1)}}));
  auto e2 = concave_envelope({{q(0), q(0)}, {q(2), q(1)}, {q(1), q(1)}});
  CHECK(e2.vertices() == std::vector<Point>{{q(0), q(0)}, {q(1), q(1)}, {q(2), q(1)}});
  auto e3 = concave_envelope({{q(0), q(0)}, {q(1), q(1)}, {q(2), q(1)}, {q(3), q(2)}});
  CHECK(e3.vertices() == std::vector<Point>{{q(0), q(0)}, {q(1), q(1)}, {q(3), q(2)}});

  TestRng rng(2024);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<Point> pts{{q(0), q(0)}};
    long count = rng.range(1, 8);
    for (long i = 0; i < count; ++i)
      pts.push_back({Rational(rng.range(0, 12), rng.range(1, 3)),
                     Rational(rng.range(-10, 10), rng.range(1, 3))});
    // ensure no point sits above the origin
    std::erase_if(pts, [](const Point& z) { return z.x.is_zero() && z.y.sign() > 0; });
    auto env = concave_envelope(pts);
    for (const auto& z : pts) {
      CHECK(env.eval(z.x) >= z.y);
      CHECK(env.eval(z.x) == envelope_oracle(pts, z.x));
    }
    for (const auto& v : env.vertices()) CHECK(env.eval(v.x) == envelope_oracle(pts, v.x));
  }
}

TEST_CASE("envelope idempotent on polygons") {
  TestRng rng(7);
  for (int iter = 0; iter < 100; ++iter) {
    auto p = random_polygon(rng);
    std::vector<Point> pts = p.vertices();
    CHECK(concave_envelope(pts) == p);
  }
}

TEST_CASE("rescale") {
  auto p = ConcavePolygon::from_newton_vector(NewtonVector{q(1), q(1), q(0), q(0)});
  CHECK(rescale(p, 2) == ConcavePolygon::from_newton_vector(NewtonVector{q(1), q(0)}));
  CHECK(rescale(p, 1) == p);
  auto p2 = ConcavePolygon::from_newton_vector(NewtonVector{q(1), q(1, 2), q(1, 2), q(0)});
  CHECK(rescale(p2, 2).vertices() ==
        std::vector<Point>{{q(0), q(0)}, {q(1, 2), q(1, 2)}, {q(3, 2), q(1)}, {q(2), q(1)}});
  CHECK_THROWS_AS(rescale(p, 0), DomainError);
}

TEST_CASE("dual and symmetry") {
  auto fix = ConcavePolygon::from_newton_vector(NewtonVector{q(1), q(1, 2), q(0)});
  CHECK(dual(fix) == fix);
  auto a = ConcavePolygon::from_newton_vector(NewtonVector{q(1), q(0), q(0)});
  auto b = ConcavePolygon::from_newton_vector(NewtonVector{q(1), q(1), q(0)});
  CHECK(dual(a) == b);
  CHECK(dual(b) == a);
  CHECK(is_symmetric(ConcavePolygon::from_newton_vector(NewtonVector{q(1), q(1, 2), q(1, 2), q(0)})));
  CHECK(is_symmetric(ConcavePolygon::from_newton_vector(NewtonVector{q(1), q(0)})));
  CHECK(!is_symmetric(b));

  // p-group duality formula: HN(X) = (1, 1/2) with h = 2, deg = 3/2.
  auto hn = ConcavePolygon::from_newton_vector(NewtonVector{q(1), q(1, 2)});
  auto hn_dual = dual(hn);
  CHECK(hn_dual == ConcavePolygon::from_newton_vector(NewtonVector{q(1, 2), q(0)}));

  TestRng rng(11);
  for (int iter = 0; iter < 500; ++iter) {
    auto p = random_polygon(rng);
    CHECK(dual(dual(p)) == p);
  }
}

TEST_CASE("restrict, rest_after, reassembly") {
  auto p = ConcavePolygon::from_newton_vector(NewtonVector{q(1), q(1, 2), q(1, 2)});
  CHECK(restrict(p, q(1)) == ConcavePolygon::from_newton_vector(NewtonVector{q(1)}));
  CHECK(rest_after(p, {q(1), q(1)}) ==
        ConcavePolygon::from_newton_vector(NewtonVector{q(1, 2), q(1, 2)}));
  CHECK(rest_after(p, {q(0), q(0)}) == p);
  auto p2 = ConcavePolygon::from_newton_vector(NewtonVector{q(1), q(1), q(0)});
  CHECK(rest_after(p2, {q(1), q(1)}) == ConcavePolygon::from_newton_vector(NewtonVector{q(1), q(0)}));
  CHECK_THROWS_AS(rest_after(p, {q(3, 2), q(2)}), DomainError);

  TestRng rng(13);
  for (int iter = 0; iter < 300; ++iter) {
    auto poly = random_polygon(rng);
    if (poly.is_empty_domain()) continue;
    Rational x = poly.domain_end() * Rational(rng.range(0, 4), 4);
    Point z{x, poly.eval(x)};
    CHECK(concat(restrict(poly, x), rest_after(poly, z)) == poly);
  }
}

TEST_CASE("average") {
  auto a = ConcavePolygon::from_newton_vector(NewtonVector{q(1), q(0)});
  auto z = ConcavePolygon::from_newton_vector(NewtonVector{q(0), q(0)});
  CHECK(average({a, z}) == ConcavePolygon::from_newton_vector(NewtonVector{q(1, 2), q(0)}));
  CHECK(average({a, a}) == a);
  auto b = ConcavePolygon::from_newton_vector(NewtonVector{q(1), q(1)});
  CHECK(average({b, a}) == ConcavePolygon::from_newton_vector(NewtonVector{q(1), q(1, 2)}));
  // end point additivity
  CHECK(average({b, a}).end_value() == (b.end_value() + a.end_value()) / q(2));
  CHECK(average_types({NewtonVector{q(1), q(1)}, NewtonVector{q(1), q(0)}}) ==
        NewtonVector{q(1), q(1, 2)});
}

TEST_CASE("break points and membership") {
  auto p = ConcavePolygon::from_newton_vector(NewtonVector{q(1), q(1, 2), q(1, 2)});
  CHECK(p.break_points() == std::vector<Point>{{q(1), q(1)}});
  auto line = ConcavePolygon::from_newton_vector(NewtonVector{q(1), q(1), q(1)});
  CHECK(line.break_points().empty());
  auto p2 = ConcavePolygon::from_newton_vector(NewtonVector{q(1), q(1), q(0)});
  CHECK(!p2.lies_on({q(3, 2), q(2)}));
  CHECK(p2.lies_on({q(3, 2), q(3, 2)}));
  CHECK(p2.is_break_point({q(2), q(2)}));
  CHECK(!p2.is_break_point({q(1), q(1)}));
}

TEST_CASE("serialization round trip, canonical text") {
  auto p = ConcavePolygon::from_newton_vector(NewtonVector{q(1), q(1, 2), q(1, 2)});
  CHECK(to_string(p) == "(0,0);(1,1);(3,2)");
  CHECK(parse_polygon("(0,0);(1,1);(3,2)") == p);
  CHECK(to_string(parse_polygon("(0,0);(1,-1/2)")) == "(0,0);(1,-1/2)");
  CHECK_THROWS_AS(parse_polygon("(0,0);(1,1);(2,2)"), ParseError);  // collinear: not canonical
  CHECK_THROWS_AS(parse_polygon("nonsense"), ParseError);
  CHECK(to_string(ConcavePolygon()) == "(0,0)");
}

TEST_CASE("newton vector embedding") {
  NewtonVector v{q(1), q(1, 2), q(1, 2)};
  auto p = ConcavePolygon::from_newton_vector(v);
  CHECK(p.is_newton_shaped());
  CHECK(p.to_newton_vector() == v);
  CHECK(v.dual() == NewtonVector{q(1, 2), q(1, 2), q(0)});
  CHECK_THROWS_AS(NewtonVector({q(0), q(1)}), DomainError);
  auto r = rescale(ConcavePolygon::from_newton_vector(NewtonVector{q(1), q(1, 2), q(1, 2), q(0)}), 2);
  CHECK(!r.is_newton_shaped());
}
