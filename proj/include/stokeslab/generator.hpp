#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "stokeslab/presentation.hpp"
#include "stokeslab/transport.hpp"

namespace stokeslab {

/// Deterministic instance description: the same spec always produces the
/// same presentation, bit for bit.
struct GeneratorSpec {
  std::uint64_t seed = 1;
  std::size_t n = 2;        // number of singularities, 1..6
  std::size_t max_dim = 1;  // block dimension bound, 1..4
  long coord_bound = 3;     // exponent grid and entry bound
};

/// splitmix64; tiny, portable, reproducible across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  long range(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t s_;
};

namespace detail {

inline std::vector<Direction> direction_pool() {
  std::vector<Direction> pool;
  for (long x = -4; x <= 4; ++x)
    for (long y = -4; y <= 4; ++y) {
      if (x == 0 && y == 0) continue;
      Integer g = gcd(Integer(x), Integer(y));
      if (g != 1) continue;
      pool.emplace_back(x, y);
    }
  return pool;
}

inline bool same_order(const ExponentConfig& cfg, const Direction& a, const Direction& b) {
  for (std::size_t i = 0; i < cfg.size(); ++i)
    for (std::size_t j = i + 1; j < cfg.size(); ++j) {
      int sa = sign(dot(cfg[j] - cfg[i], a));
      int sb = sign(dot(cfg[j] - cfg[i], b));
      if (sa != sb) return false;
    }
  return true;
}

}  // namespace detail

/// Samples a valid presentation: distinct grid exponents, invertible
/// diagonal blocks, small off-diagonal entries, and a reference system whose
/// base direction induces the same dominance order as the crossing order of
/// the cut system (so the assembled monodromy formula applies verbatim).
inline Presentation gen_random(const GeneratorSpec& spec) {
  if (spec.n < 1 || spec.n > 6 || spec.max_dim < 1 || spec.max_dim > 4 || spec.coord_bound < 1)
    throw std::invalid_argument("generator spec out of range");
  Rng rng(spec.seed);
  const std::vector<Direction> pool = detail::direction_pool();
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Presentation p;
    // distinct exponents on the integer grid
    for (std::size_t i = 0; i < spec.n && p.cfg.exponents.size() == i;) {
      GaussianRational c{Rational(rng.range(-spec.coord_bound, spec.coord_bound)),
                         Rational(rng.range(-spec.coord_bound, spec.coord_bound))};
      bool fresh = true;
      for (const auto& e : p.cfg.exponents)
        if (e == c) fresh = false;
      if (fresh) {
        p.cfg.exponents.push_back(c);
        ++i;
      }
    }
    std::vector<std::size_t> dims;
    for (std::size_t i = 0; i < spec.n; ++i)
      dims.push_back(static_cast<std::size_t>(rng.range(1, static_cast<long>(spec.max_dim))));
    p.blocks = BlockStructure(dims);
    p.maps.assign(spec.n, std::vector<MatQ>(spec.n));
    bool blocks_ok = true;
    for (std::size_t i = 0; i < spec.n; ++i)
      for (std::size_t j = 0; j < spec.n; ++j) {
        MatQ m(dims[i], dims[j]);
        if (i == j) {
          bool inv = false;
          for (int tries = 0; tries < 40 && !inv; ++tries) {
            for (std::size_t r = 0; r < m.rows(); ++r)
              for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rng.range(-3, 3);
            inv = m.det() != 0;
          }
          if (!inv) blocks_ok = false;
        } else {
          for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
              m(r, c) = rng.range(0, 2) == 0 ? rng.range(-2, 2) : 0;
        }
        p.maps[i][j] = std::move(m);
      }
    if (!blocks_ok) continue;

    // cut direction avoiding both Stokes and anti-Stokes directions, so
    // perp(cut) is always an admissible base
    Direction cut(1, 0);
    bool found_cut = false;
    for (int tries = 0; tries < 64 && !found_cut; ++tries) {
      Direction c = pool[static_cast<std::size_t>(rng.next() % pool.size())];
      if (!is_stokes_direction(c, p.cfg) && !is_anti_stokes_direction(c, p.cfg)) {
        cut = c;
        found_cut = true;
      }
    }
    if (!found_cut) continue;
    p.cut_direction = cut;
    Direction crossing_order = perp(cut);
    p.base_direction = crossing_order;
    for (int tries = 0; tries < 16; ++tries) {
      Direction b = pool[static_cast<std::size_t>(rng.next() % pool.size())];
      if (is_stokes_direction(b, p.cfg) || is_anti_stokes_direction(b, p.cfg)) continue;
      if (!detail::same_order(p.cfg, b, crossing_order)) continue;
      p.base_direction = b;
      break;
    }
    if (!validate(p).empty()) continue;
    // keep the reference radial off the parallel cut line family
    try {
      make_far_frame(p);
    } catch (const DegeneratePath&) {
      continue;
    }
    return p;
  }
  throw std::runtime_error("generator failed after 1000 attempts");
}

}  // namespace stokeslab
