#pragma once

#include <initializer_list>

#include "stokeslab/presentation.hpp"

namespace fixtures {

using namespace stokeslab;

inline MatQ mat(std::size_t r, std::size_t c, std::initializer_list<long> vals) {
  MatQ m(r, c);
  auto it = vals.begin();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = *it++;
  return m;
}

inline GaussianRational pt(long re, long im) { return {Rational(re), Rational(im)}; }

/// The worked two-singularity instance: c = (0, 1), d = (1, 1),
/// T11 = [2], T22 = [3], T12 = [1], T21 = [5], cut (0,-1), base (1,1).
inline Presentation e2() {
  Presentation p;
  p.cfg.exponents = {pt(0, 0), pt(1, 0)};
  p.blocks = BlockStructure({1, 1});
  p.maps = {{mat(1, 1, {2}), mat(1, 1, {1})}, {mat(1, 1, {5}), mat(1, 1, {3})}};
  p.cut_direction = Direction(0, -1);
  p.base_direction = Direction(1, 1);
  return p;
}

/// Block-diagonal data: T_ij = 0 off-diagonal.
inline Presentation trivial3() {
  Presentation p;
  p.cfg.exponents = {pt(0, 0), pt(2, 1), pt(-1, 3)};
  p.blocks = BlockStructure({1, 2, 1});
  p.maps.assign(3, std::vector<MatQ>(3));
  p.maps[0][0] = mat(1, 1, {2});
  p.maps[1][1] = mat(2, 2, {1, 1, 0, 1});
  p.maps[2][2] = mat(1, 1, {-1});
  p.maps[0][1] = MatQ(1, 2);
  p.maps[0][2] = MatQ(1, 1);
  p.maps[1][0] = MatQ(2, 1);
  p.maps[1][2] = MatQ(2, 1);
  p.maps[2][0] = MatQ(1, 1);
  p.maps[2][1] = MatQ(1, 2);
  p.cut_direction = Direction(0, -1);
  p.base_direction = Direction(1, 0);
  return p;
}

/// Fully trivial Stokes data: identity diagonal blocks, zero off-diagonal.
inline Presentation identity2() {
  Presentation p;
  p.cfg.exponents = {pt(0, 0), pt(1, 1)};
  p.blocks = BlockStructure({1, 1});
  p.maps = {{mat(1, 1, {1}), MatQ(1, 1)}, {MatQ(1, 1), mat(1, 1, {1})}};
  p.cut_direction = Direction(0, -1);
  p.base_direction = Direction(1, 0);
  return p;
}

}  // namespace fixtures
