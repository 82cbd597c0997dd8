#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "stokeslab/costokes.hpp"

using namespace stokeslab;
using fixtures::e2;
using fixtures::mat;
using fixtures::pt;

TEST_CASE("filtration stalk extremes") {
  Presentation p = e2();
  FarFrame f = make_far_frame(p);
  CHECK(filtration_stalk(p, f, pt(10, 10), Direction(1, 1), true) == Subspace::full(2));
  CHECK(filtration_stalk(p, f, pt(0, 0), Direction(1, 1), true) == Subspace::zero(2));
  CHECK(filtration_stalk(p, f, pt(0, 0), Direction(-1, -1), true).dim() == 1);
}

TEST_CASE("strict versus non-strict filtration at a singular anchor") {
  Presentation p = e2();
  FarFrame f = make_far_frame(p);
  Subspace strict = filtration_stalk(p, f, pt(0, 0), Direction(1, 1), true);
  Subspace loose = filtration_stalk(p, f, pt(0, 0), Direction(1, 1), false);
  CHECK(strict.dim() == 0);
  CHECK(loose.dim() == 1);
  CHECK(loose.contains(strict));
}

TEST_CASE("filtration monotonicity along a direction") {
  Presentation p = e2();
  FarFrame f = make_far_frame(p);
  Direction theta(2, 1);
  Subspace lo = filtration_stalk(p, f, pt(-5, 0), theta, true);
  Subspace mid = filtration_stalk(p, f, {rat(1, 2), rat(0)}, theta, true);
  Subspace hi = filtration_stalk(p, f, pt(7, 3), theta, true);
  CHECK(mid.contains(lo));
  CHECK(hi.contains(mid));
}

TEST_CASE("filtration stalk constant between crossing directions") {
  Presentation p = e2();
  FarFrame f = make_far_frame(p);
  GaussianRational xi = pt(0, 0);
  // crossing directions of 0 are (0,1) and (0,-1); the left arc
  Subspace a = filtration_stalk(p, f, xi, Direction(-1, 1), true);
  Subspace b = filtration_stalk(p, f, xi, Direction(-1, 0), true);
  Subspace c = filtration_stalk(p, f, xi, Direction(-2, -1), true);
  CHECK(a == b);
  CHECK(b == c);
}

TEST_CASE("arc subsheaf of the worked instance at xi = 0") {
  Presentation p = e2();
  FarFrame f = make_far_frame(p);
  ArcSheaf a = build_arc_subsheaf(p, f, pt(0, 0));
  REQUIRE(a.jumps.size() == 2);
  CHECK(((a.jumps[0] == Direction(0, 1) && a.jumps[1] == Direction(0, -1)) ||
         (a.jumps[0] == Direction(0, -1) && a.jumps[1] == Direction(0, 1))));
  for (const Subspace& ps : a.point_spaces) CHECK(ps.dim() == 0);
  std::size_t total = 0;
  for (const Subspace& w : a.arc_spaces) total += w.dim();
  CHECK(total == 1);  // one-dimensional on the left arc, zero on the right

  CircleCohomology h = circle_cohomology(a);
  CHECK(h.h0_dim() == 0);
  CHECK(h.h1_dim() == 1);
}

TEST_CASE("zero subsheaf for a single singularity at its own exponent") {
  Presentation p;
  p.cfg.exponents = {pt(2, -1)};
  p.blocks = BlockStructure({2});
  p.maps = {{mat(2, 2, {1, 3, 0, 2})}};
  p.cut_direction = Direction(0, -1);
  p.base_direction = Direction(1, 0);
  FarFrame f = make_far_frame(p);
  ArcSheaf a = build_arc_subsheaf(p, f, p.cfg[0]);
  CHECK(a.jumps.empty());
  CHECK(a.arc_spaces[0].dim() == 0);
  CircleCohomology h = circle_cohomology(a);
  CHECK(h.h0_dim() == 0);
  CHECK(h.h1_dim() == 0);
}

TEST_CASE("nonsingular xi sees four jumps on the worked instance") {
  Presentation p = e2();
  FarFrame f = make_far_frame(p);
  // generic nonsingular point: two jump directions per exponent pair with xi
  ArcSheaf a = build_arc_subsheaf(p, f, pt(5, 2));
  CHECK(a.jumps.size() == 4);
  CircleCohomology h = circle_cohomology(a);
  CHECK(h.h0_dim() == 0);
  CHECK(h.h1_dim() == 2);
}

TEST_CASE("constant circle sheaf has full cohomology in both degrees") {
  ArcSheaf a;
  a.ambient = 2;
  a.wrap = MatQ::identity(2);
  a.cut = Direction(1, 0);
  a.arc_spaces = {Subspace::full(2)};
  CircleCohomology h = circle_cohomology(a);
  CHECK(h.h0_dim() == 2);
  CHECK(h.h1_dim() == 2);
}

TEST_CASE("h0 vanishes and h1 matches stalk dimension across sample points") {
  Presentation p = e2();
  FarFrame f = make_far_frame(p);
  std::vector<GaussianRational> samples = {pt(0, 0), pt(1, 0),   pt(5, 0),  pt(-3, 2),
                                           pt(0, 7), pt(-1, -1), pt(2, -3), {rat(1, 2), rat(1, 3)}};
  for (const auto& xi : samples) {
    CircleCohomology h = circle_cohomology(p, f, xi);
    CHECK(h.h0_dim() == 0);
    CHECK(h.h1_dim() == stalk(p, xi).dim());
  }
}

TEST_CASE("two half-plane dimension identity") {
  Presentation p = e2();
  FarFrame f = make_far_frame(p);
  for (const auto& xi : {pt(0, 0), pt(1, 0), pt(3, -2), pt(-1, 1)}) {
    auto crossings = crossing_directions(xi, p.cfg);
    Direction theta(7, 3);
    bool is_crossing = false;
    for (const auto& d : crossings)
      if (d == theta || d == antipode(theta)) is_crossing = true;
    REQUIRE(!is_crossing);
    CircleCohomology h = circle_cohomology(p, f, xi);
    std::size_t lhs = h.h1_dim();
    std::size_t rhs = filtration_stalk(p, f, xi, theta, true).dim() +
                      filtration_stalk(p, f, xi, antipode(theta), true).dim();
    CHECK(lhs == rhs);
  }
}

TEST_CASE("splitting of block-diagonal data gives coordinate subspaces") {
  Presentation p = fixtures::trivial3();
  FarFrame f = make_far_frame(p);
  auto parts = good_interval_splitting(p, f, Direction(1, 1));
  REQUIRE(parts.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(parts[i] == coordinate_block(p, i));
}

TEST_CASE("splitting of the worked instance is the coordinate splitting") {
  Presentation p = e2();
  FarFrame f = make_far_frame(p);
  auto parts = good_interval_splitting(p, f, Direction(1, 1));
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] == Subspace::span(mat(2, 1, {1, 0})));
  CHECK(parts[1] == Subspace::span(mat(2, 1, {0, 1})));
}

TEST_CASE("splitting refines the ascending flag at theta") {
  Presentation p = e2();
  FarFrame f = make_far_frame(p);
  Direction theta(1, 2);
  auto parts = good_interval_splitting(p, f, theta);
  auto order = theta_order(p, theta);
  Subspace acc = Subspace::zero(p.dimension());
  for (std::size_t k = 0; k < order.size(); ++k) {
    acc = sum(acc, parts[order[k]]);
    Subspace flag = filtration_stalk(p, f, p.cfg[order[k]], theta, false);
    CHECK(acc == flag);
  }
}

TEST_CASE("splitting is reproducible") {
  Presentation p = e2();
  FarFrame f = make_far_frame(p);
  auto a = good_interval_splitting(p, f, Direction(1, 1));
  auto b = good_interval_splitting(p, f, Direction(1, 1));
  CHECK(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("extracted stokes data of the worked instance") {
  Presentation p = e2();
  FarFrame f = make_far_frame(p);
  StokesData d = extract_stokes_data(p, f, Direction(1, 1));
  CHECK(validate_stokes_data(d).empty());
  REQUIRE(d.count() == 2);
  CHECK(d.exponents[0] == pt(0, 0));
  CHECK(d.q(0, 0) == 2);
  CHECK(d.q(1, 1) == 3);
  CHECK(d.q(1, 0) == 15);
  CHECK(d.s(0, 1) == rat(1, 3));
  CHECK(d.s * d.q == mat(2, 2, {7, 1, 15, 3}));
}

TEST_CASE("extraction from block-diagonal data") {
  Presentation p = fixtures::trivial3();
  FarFrame f = make_far_frame(p);
  StokesData d = extract_stokes_data(p, f, Direction(1, 1));
  CHECK(d.s.is_identity());
  BlockStructure bs(d.dims);
  for (std::size_t i = 0; i < d.count(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      CHECK(d.q.block(bs.offset(i), bs.offset(j), bs.dims[i], bs.dims[j]).is_zero());
}

TEST_CASE("graded monodromy blocks are similar to the diagonal maps") {
  Presentation p = e2();
  p.maps[0][1] = mat(1, 1, {-4});
  REQUIRE(validate(p).empty());
  FarFrame f = make_far_frame(p);
  for (const Direction& theta : {Direction(1, 1), Direction(-2, 1), Direction(1, -3)}) {
    StokesData d = extract_stokes_data(p, f, theta);
    BlockStructure bs(d.dims);
    auto order = theta_order(p, theta);
    for (std::size_t k = 0; k < d.count(); ++k) {
      MatQ qkk = d.q.block(bs.offset(k), bs.offset(k), bs.dims[k], bs.dims[k]);
      CHECK(similar(qkk, p.maps[order[k]][order[k]]));
    }
  }
}

TEST_CASE("realize on trivial stokes data gives the trivial presentation") {
  StokesData d;
  d.theta = Direction(1, 0);
  d.exponents = {pt(0, 0), pt(1, 1)};
  d.dims = {1, 1};
  d.s = MatQ::identity(2);
  d.q = mat(2, 2, {2, 0, 0, 3});
  Presentation p = realize_presentation(d);
  CHECK(validate(p).empty());
  CHECK(p.maps[0][0] == mat(1, 1, {2}));
  CHECK(p.maps[1][1] == mat(1, 1, {3}));
  CHECK(p.maps[0][1].is_zero());
  CHECK(p.maps[1][0].is_zero());
}

TEST_CASE("realize recovers the worked instance maps") {
  Presentation p = e2();
  FarFrame f = make_far_frame(p);
  StokesData d = extract_stokes_data(p, f, Direction(1, 1));
  Presentation r = realize_presentation(d);
  CHECK(validate(r).empty());
  CHECK(r.maps[0][0] == mat(1, 1, {2}));
  CHECK(r.maps[1][1] == mat(1, 1, {3}));
  CHECK(r.maps[0][1] == mat(1, 1, {1}));
  CHECK(r.maps[1][0] == mat(1, 1, {5}));
}

TEST_CASE("round trip: extract of realize is the identity on stokes data") {
  Presentation p = e2();
  p.maps[0][1] = mat(1, 1, {2});
  p.maps[1][0] = mat(1, 1, {-3});
  REQUIRE(validate(p).empty());
  FarFrame f = make_far_frame(p);
  for (const Direction& theta : {Direction(1, 1), Direction(-1, 2), Direction(-3, -2)}) {
    StokesData d = extract_stokes_data(p, f, theta);
    Presentation r = realize_presentation(d);
    REQUIRE(validate(r).empty());
    StokesData d2 = extract_stokes_data(r, theta);
    CHECK(d2.s == d.s);
    CHECK(d2.q == d.q);
    CHECK(d2.exponents == d.exponents);
    CHECK(d2.dims == d.dims);

    // realize of extract is the identity after the adapted normalization
    Presentation r2 = realize_presentation(d2);
    for (std::size_t i = 0; i < r.count(); ++i)
      for (std::size_t j = 0; j < r.count(); ++j) CHECK(r2.maps[i][j] == r.maps[i][j]);
  }
}
