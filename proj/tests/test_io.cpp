#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <isopoly/gen.hpp>
#include <isopoly/io.hpp>

using namespace isopoly;

TEST_CASE("object round trip, both tiers") {
  Rng rng(404);
  int b_seen = 0, a_seen = 0;
  for (int k = 0; k < 20; ++k) {
    Rng fork = rng.fork(k);
    auto obj = random_wa_instance(fork);
    std::string text = write_object(obj);
    auto back = parse_object(text);
    // bit-exact round trip of the serialized form
    CHECK(write_object(back) == text);
    CHECK(t_N(back) == t_N(obj));
    CHECK(t_H(back) == t_H(obj));
    CHECK(newt_cx(back) == newt_cx(obj));
    CHECK(hodge_cx(back) == hodge_cx(obj));
    CHECK(hn_polygon_cx(back) == hn_polygon_cx(obj));
    (obj.tier_b() ? b_seen : a_seen)++;
  }
  CHECK(b_seen > 0);
  CHECK(a_seen > 0);
}

TEST_CASE("hand-written object file with whole-space filtration") {
  std::string text = R"(# worked split instance
object
p 3
f 1
height 3
[isocrystal]
slot 0 -> 0 : exp -1 unit 1
slot 1 -> 2 : exp -1 unit 1
slot 2 -> 1 : exp 0 unit 1
[coefficients]
d 1
ef 1
ff 1
eis -3 1
[base]
eis -3 1
[filtration]
tier B
jump -1 full
jump 0
row [0] [1] [1]
)";
  auto obj = parse_object(text);
  CHECK(t_N(obj) == -2);
  CHECK(t_H(obj) == -2);
  CHECK(to_string(newt_cx(obj)) == "(0,0);(1,1);(3,2)");
  CHECK(to_string(hodge_cx(obj)) == "(0,0);(2,2);(3,2)");
}

TEST_CASE("model round trip and example models") {
  auto [h0, h1] = example_2_4(3);
  std::string text = write_model(h0);
  auto back = parse_model(text);
  CHECK(write_model(back) == text);
  auto t0 = polygons(back);
  CHECK(to_string(t0.hdg) == "(0,0);(2,1)");
  CHECK(classify_input(text) == InputKind::model);
}

TEST_CASE("profile round trip") {
  TorsionProfile pr;
  pr.n = 3;
  pr.d = 1;
  pr.e = 4;
  pr.hn_limit = parse_polygon("(0,0);(1,1);(3,2)");
  pr.levels[1] = parse_polygon("(0,0);(1,1);(2,7/4);(3,2)");
  pr.levels[2] = parse_polygon("(0,0);(2,2);(4,7/2);(6,4)");
  std::string text = write_profile(pr);
  auto back = parse_profile(text);
  CHECK(write_profile(back) == text);
  CHECK(check_prop_2_8(back).ok);
  CHECK(classify_input(text) == InputKind::profile);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_object("object\np 3\nheight 2\n[isocrystal]\nnonsense\n"),
                       doctest::Contains("line 5"), ParseError);
  CHECK_THROWS_AS(parse_object(""), ParseError);
  CHECK_THROWS_AS(classify_input("garbage\n"), ParseError);
}
