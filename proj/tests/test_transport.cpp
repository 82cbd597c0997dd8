#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "stokeslab/transport.hpp"

using namespace stokeslab;
using fixtures::e2;
using fixtures::mat;
using fixtures::pt;

namespace {

GaussianRational half(long a, long b) { return {rat(a, 2), rat(b, 2)}; }

}  // namespace

TEST_CASE("segment crossings along a horizontal path under both cuts") {
  Presentation p = e2();
  auto cs = segment_crossings(p, {pt(-1, -1), pt(2, -1)});
  REQUIRE(cs.size() == 2);
  CHECK(cs[0].ray == 0);
  CHECK(cs[0].sgn == +1);
  CHECK(cs[1].ray == 1);
  CHECK(cs[1].sgn == +1);
}

TEST_CASE("no crossings above the cuts") {
  Presentation p = e2();
  CHECK(segment_crossings(p, {pt(-1, 1), pt(2, 1)}).empty());
}

TEST_CASE("counterclockwise rectangle around the first singularity") {
  Presentation p = e2();
  Polyline rect = {half(-1, -1), half(1, -1), half(1, 1), half(-1, 1), half(-1, -1)};
  auto cs = segment_crossings(p, rect);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].ray == 0);
  CHECK(cs[0].sgn == +1);
  CHECK(transport_matrix(p, rect) == elementary_matrix(p, 0));
}

TEST_CASE("clockwise rectangle gives the inverse") {
  Presentation p = e2();
  Polyline rect = {half(-1, -1), half(-1, 1), half(1, 1), half(1, -1), half(-1, -1)};
  CHECK(transport_matrix(p, rect) == *elementary_matrix(p, 0).inverse());
}

TEST_CASE("degenerate paths are rejected") {
  Presentation p = e2();
  CHECK_THROWS_AS(segment_crossings(p, {pt(0, -2), pt(1, -2)}), DegeneratePath);  // vertex on ray
  CHECK_THROWS_AS(segment_crossings(p, {pt(-1, 0), pt(2, 0)}), DegeneratePath);   // through c_i
  CHECK_THROWS_AS(validate_polyline(p, {pt(0, 0), pt(3, 3)}), DegeneratePath);    // vertex at c_i
  // running along a cut ray
  CHECK_THROWS_AS(segment_crossings(p, {pt(0, -3), pt(0, -5)}), DegeneratePath);
}

TEST_CASE("transport around a contractible loop is the identity") {
  Presentation p = e2();
  Polyline loop = {pt(3, 3), pt(4, 3), pt(4, 5), pt(3, 5), pt(3, 3)};
  CHECK(transport_matrix(p, loop).is_identity());
  // contractible but dipping between the cuts
  Polyline dip = {pt(-2, 1), half(1, -3), pt(-2, -3), pt(-2, 1)};
  CHECK(transport_matrix(p, dip).is_identity());
}

TEST_CASE("transport is multiplicative and inverts under reversal") {
  Presentation p = e2();
  Polyline ab = {pt(-1, -1), pt(2, -1), pt(2, 2)};
  Polyline bc = {pt(2, 2), pt(-2, 2), pt(-2, -2)};
  Polyline abc = {pt(-1, -1), pt(2, -1), pt(2, 2), pt(-2, 2), pt(-2, -2)};
  CHECK(transport_matrix(p, bc) * transport_matrix(p, ab) == transport_matrix(p, abc));
  Polyline rev(abc.rbegin(), abc.rend());
  CHECK(transport_matrix(p, rev) * transport_matrix(p, abc) == MatQ::identity(2));
}

TEST_CASE("big counterclockwise circle transports the total monodromy") {
  Presentation p = e2();
  Polyline big = {pt(9, 1), pt(-9, 1), pt(-9, -9), pt(9, -9), pt(9, 1)};
  // based on the far side of the cut cluster: the crossing-ordered product
  CHECK(transport_matrix(p, big) == total_monodromy(p));
}

TEST_CASE("halfplane sections: no exponents contained") {
  Presentation p = e2();
  HalfPlane h{pt(0, 2), Direction(0, 1), true};
  CHECK(halfplane_sections(p, h) == Subspace::full(2));
}

TEST_CASE("halfplane sections: both exponents contained") {
  Presentation p = e2();
  HalfPlane h{pt(0, -2), Direction(0, 1), true};
  CHECK(halfplane_sections(p, h) == Subspace::zero(2));
}

TEST_CASE("halfplane sections: dimension counts the outside blocks") {
  Presentation p = e2();
  HalfPlane left{half(1, 0), Direction(-1, 0), true};  // contains c_1 = 0 only
  Subspace s = halfplane_sections(p, left);
  CHECK(s.dim() == 1);
  HalfPlane right{half(1, 0), Direction(1, 0), true};  // contains c_2 = 1 only
  CHECK(halfplane_sections(p, right).dim() == 1);
}

TEST_CASE("halfplane sections monotone under shrinking, same normal") {
  Presentation p = fixtures::trivial3();
  p.maps[1][0] = mat(2, 1, {1, 1});
  p.maps[2][1] = mat(1, 2, {2, 0});
  REQUIRE(validate(p).empty());
  FarFrame f = make_far_frame(p);
  Direction u(1, 2);
  // anchors sliding along u: each half-plane contains the next, so the
  // section spaces grow
  Subspace prev = halfplane_sections(p, f, HalfPlane{pt(-9, -9), u, true});
  std::size_t prev_dim = prev.dim();
  CHECK(prev_dim == 0);
  for (long step : {-2L, 0L, 3L, 9L}) {
    Subspace s = halfplane_sections(p, f, HalfPlane{pt(step, step), u, true});
    CHECK(s.contains(prev));
    CHECK(s.dim() >= prev_dim);
    prev = s;
    prev_dim = s.dim();
  }
  CHECK(prev_dim == 4);
}

TEST_CASE("halfplane sections dimension formula on a three block instance") {
  Presentation p = fixtures::trivial3();
  p.maps[1][0] = mat(2, 1, {1, 1});
  p.maps[0][2] = mat(1, 1, {-2});
  REQUIRE(validate(p).empty());
  FarFrame f = make_far_frame(p);
  std::vector<Direction> normals = {Direction(1, 0), Direction(0, 1), Direction(-2, 1),
                                    Direction(3, -1), Direction(-1, -1)};
  std::vector<GaussianRational> anchors = {pt(0, 0), pt(1, 1), half(-3, 5), pt(2, -1)};
  for (const auto& u : normals)
    for (const auto& a : anchors) {
      HalfPlane h{a, u, true};
      std::size_t expected = 0;
      for (std::size_t i = 0; i < p.count(); ++i)
        if (!halfplane_contains(h, p.cfg[i])) expected += p.blocks.dims[i];
      CHECK(halfplane_sections(p, f, h).dim() == expected);
    }
}
