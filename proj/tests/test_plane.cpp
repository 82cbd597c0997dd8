#include <catch2/catch_amalgamated.hpp>

#include "stokeslab/plane.hpp"

using namespace stokeslab;

namespace {

GaussianRational pt(long re, long im) { return {Rational(re), Rational(im)}; }

ExponentConfig cfg2() { return ExponentConfig{{pt(0, 0), pt(1, 0)}}; }

bool has(const std::vector<Direction>& v, const Direction& d) {
  return std::find(v.begin(), v.end(), d) != v.end();
}

}  // namespace

TEST_CASE("cmp_order sign conventions") {
  CHECK(cmp_order(pt(0, 0), pt(1, 0), Direction(1, 0)) == Order::Less);
  CHECK(cmp_order(pt(0, 1), pt(0, 0), Direction(0, 1)) == Order::Greater);
  CHECK(cmp_order(pt(1, 1), pt(2, 2), Direction(1, -1)) == Order::OnLine);
}

TEST_CASE("cmp_order antisymmetry and scale invariance") {
  std::vector<GaussianRational> pts = {pt(0, 0), pt(1, 0), pt(2, -3), pt(-1, 5),
                                       {rat(1, 2), rat(-3, 7)}};
  std::vector<Direction> dirs = {Direction(1, 0), Direction(0, 1), Direction(2, -5), Direction(-3, -4)};
  for (const auto& a : pts)
    for (const auto& b : pts)
      for (const auto& u : dirs) {
        Order ab = cmp_order(a, b, u), ba = cmp_order(b, a, u);
        if (ab == Order::Less) CHECK(ba == Order::Greater);
        if (ab == Order::OnLine) CHECK(ba == Order::OnLine);
        // a positive multiple of u normalizes back to u itself
        Direction u3(Integer(3 * u.x), Integer(3 * u.y));
        CHECK(u3 == u);
      }
}

TEST_CASE("stokes directions of two points") {
  auto s = stokes_directions(cfg2());
  REQUIRE(s.size() == 2);
  CHECK(has(s, Direction(0, 1)));
  CHECK(has(s, Direction(0, -1)));
}

TEST_CASE("stokes directions: single exponent has none") {
  ExponentConfig one{{pt(3, -2)}};
  CHECK(stokes_directions(one).empty());
  CHECK(anti_stokes_directions(one).empty());
}

TEST_CASE("stokes directions of three points") {
  ExponentConfig cfg{{pt(0, 0), pt(1, 0), pt(1, 1)}};
  auto s = stokes_directions(cfg);
  REQUIRE(s.size() == 6);
  for (auto d : {Direction(0, 1), Direction(0, -1), Direction(-1, 1), Direction(1, -1),
                 Direction(1, 0), Direction(-1, 0)})
    CHECK(has(s, d));
}

TEST_CASE("anti-stokes directions") {
  auto a = anti_stokes_directions(cfg2());
  REQUIRE(a.size() == 2);
  CHECK(has(a, Direction(1, 0)));
  CHECK(has(a, Direction(-1, 0)));

  ExponentConfig vertical{{pt(0, 0), pt(0, 1)}};
  auto av = anti_stokes_directions(vertical);
  REQUIRE(av.size() == 2);
  CHECK(has(av, Direction(0, 1)));
  CHECK(has(av, Direction(0, -1)));
}

TEST_CASE("stokes and anti-stokes of a pair are perpendicular antipodal pairs") {
  ExponentConfig cfg{{pt(2, -1), pt(-3, 4)}};
  auto s = stokes_directions(cfg);
  auto a = anti_stokes_directions(cfg);
  REQUIRE(s.size() == 2);
  REQUIRE(a.size() == 2);
  CHECK(s[1] == antipode(s[0]));
  CHECK(a[1] == antipode(a[0]));
  CHECK(dot(s[0], a[0]) == 0);
}

TEST_CASE("crossing directions") {
  CHECK(crossing_directions(pt(0, 0), cfg2()) ==
        std::vector<Direction>{Direction(0, 1), Direction(0, -1)});
  ExponentConfig one{{pt(5, 5)}};
  CHECK(crossing_directions(pt(5, 5), one).empty());
  // both differences horizontal: directions coincide after dedup
  CHECK(crossing_directions(pt(2, 0), cfg2()) ==
        std::vector<Direction>{Direction(0, 1), Direction(0, -1)});
}

TEST_CASE("interval classification") {
  CHECK(classify_interval(AngularInterval(Direction(1, -1), Direction(1, 1)), cfg2()) ==
        IntervalClass::Small);
  CHECK(classify_interval(AngularInterval(Direction(1, -1), Direction(-1, 1)), cfg2()) ==
        IntervalClass::Good);
  // length just under 2*pi: from (1,0) back around to (1,-1)
  CHECK(classify_interval(AngularInterval(Direction(1, 0), Direction(1, -1)), cfg2()) ==
        IntervalClass::Neither);
}

TEST_CASE("good intervals have small subintervals") {
  ExponentConfig cfg{{pt(0, 0), pt(1, 0), pt(0, 1)}};
  AngularInterval good(Direction(1, -1), Direction(-1, 1));
  if (classify_interval(good, cfg) == IntervalClass::Good) {
    AngularInterval sub(Direction(1, 0), Direction(0, 1));
    auto c = classify_interval(sub, cfg);
    CHECK((c == IntervalClass::Good || c == IntervalClass::Small));
  }
}

TEST_CASE("interior_direction spec values") {
  CHECK(interior_direction(Direction(1, 0), Direction(0, 1)) == Direction(1, 1));
  CHECK(interior_direction(Direction(1, 0), Direction(-1, 0)) == Direction(0, 1));
  CHECK(interior_direction(Direction(0, 1), Direction(0, -1)) == Direction(-1, 0));
}

TEST_CASE("interior_direction lands strictly inside") {
  std::vector<Direction> dirs = {Direction(1, 0),  Direction(2, 1),  Direction(0, 1),
                                 Direction(-1, 2), Direction(-1, 0), Direction(-3, -1),
                                 Direction(0, -1), Direction(5, -2)};
  for (const auto& a : dirs)
    for (const auto& b : dirs) {
      if (a == b) continue;
      Direction m = interior_direction(a, b);
      AngularInterval arc(a, b);
      CHECK(arc.contains(m));
    }
}

TEST_CASE("halfplane_side") {
  HalfPlane h{pt(0, 0), Direction(1, 0), true};
  CHECK(halfplane_side(h, pt(1, 0)) == Side::Inside);
  CHECK(halfplane_side(h, pt(0, 0)) == Side::Boundary);
  CHECK(halfplane_side(h, pt(-1, 1)) == Side::Outside);
  CHECK(halfplane_contains(h, pt(0, 5)));
  HalfPlane open{pt(0, 0), Direction(1, 0), false};
  CHECK(!halfplane_contains(open, pt(0, 5)));
}

TEST_CASE("halfplane_side invariant under sliding the anchor along the boundary") {
  HalfPlane h{pt(2, 3), Direction(3, -2), true};
  GaussianRational along = dirvec(perp(h.normal));
  HalfPlane h2{h.anchor + along, h.normal, true};
  for (const auto& x : {pt(0, 0), pt(4, 4), pt(-7, 2), pt(2, 3)})
    CHECK(halfplane_side(h, x) == halfplane_side(h2, x));
}

TEST_CASE("angular interval membership, long arcs included") {
  AngularInterval long_arc(Direction(0, 1), Direction(1, 1));
  CHECK(long_arc.contains(Direction(-1, 0)));
  CHECK(long_arc.contains(Direction(0, -1)));
  CHECK(long_arc.contains(Direction(1, 0)));
  CHECK(!long_arc.contains(Direction(0, 1)));
  CHECK(!long_arc.contains(Direction(1, 1)));
  CHECK(!long_arc.contains(Direction(1, 2)));
}

TEST_CASE("circular sort starts at positive x axis") {
  std::vector<Direction> ds = {Direction(-1, 0), Direction(1, 1), Direction(1, 0),
                               Direction(0, -1), Direction(1, 1)};
  circular_sort(ds);
  CHECK(ds == std::vector<Direction>{Direction(1, 0), Direction(1, 1), Direction(-1, 0),
                                     Direction(0, -1)});
}
