#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "stokeslab/polynomial.hpp"
#include "stokeslab/transport.hpp"

namespace stokeslab {

/// Half-plane whose sections realize the filtration stalk at xi in direction
/// theta.  Strict: anchored at xi, so exponents on the boundary line still
/// impose their extension condition and their grade drops out.  Non-strict:
/// the anchor is nudged past xi by half the minimal positive projection gap,
/// exactly, so grade-xi summands survive.
inline HalfPlane filtration_halfplane(const Presentation& p, const GaussianRational& xi,
                                      const Direction& theta, bool strict) {
  if (strict) return HalfPlane{xi, theta, true};
  Rational u2 = dot(dirvec(theta), dirvec(theta));
  Rational best = 0;
  bool found = false;
  for (std::size_t i = 0; i < p.count(); ++i) {
    Rational d = dot(p.cfg[i] - xi, theta);
    if (d > 0 && (!found || d < best)) {
      best = d;
      found = true;
    }
  }
  Rational delta = found ? best / (2 * u2) : Rational(1);
  return HalfPlane{xi + scale(delta, theta), theta, true};
}

/// Filtration stalk at xi in direction theta, based at the reference point.
inline Subspace filtration_stalk(const Presentation& p, const FarFrame& f,
                                 const GaussianRational& xi, const Direction& theta, bool strict) {
  return halfplane_sections(p, f, filtration_halfplane(p, xi, theta, strict));
}

inline Subspace filtration_stalk(const Presentation& p, const GaussianRational& xi,
                                 const Direction& theta, bool strict) {
  return filtration_stalk(p, make_far_frame(p), xi, theta, strict);
}

/// Cellular model of the filtration subsheaf on the circle of directions:
/// jump directions (cyclically sorted from the reference direction), stalk
/// subspaces on the open arcs and at the jumps, and the wrap monodromy
/// gluing the two sides of the cut at the reference direction.  All
/// subspaces live in the reference chart; the last arc wraps through the
/// cut and is charted by its before-side value W, its after-side value
/// being wrap * W.
struct ArcSheaf {
  std::size_t ambient = 0;
  MatQ wrap;
  Direction cut;
  std::vector<Direction> jumps;
  std::vector<Subspace> point_spaces;  // stalk at jumps[k]
  std::vector<Subspace> arc_spaces;    // stalk on the arc after jumps[k]; single entry when no jumps
};

namespace detail {

inline void check_contained(const Subspace& small, const Subspace& big, const char* what) {
  if (!big.contains(small)) throw InvalidSubsheaf(what);
}

}  // namespace detail

inline ArcSheaf build_arc_subsheaf(const Presentation& p, const FarFrame& f,
                                   const GaussianRational& xi) {
  ArcSheaf a;
  a.ambient = p.dimension();
  a.cut = direction_of(f.ref - f.hub);
  a.wrap = total_monodromy(p, f);
  a.jumps = crossing_directions(xi, p.cfg);
  // cyclic order starting at the cut; a jump equal to the cut comes first
  std::sort(a.jumps.begin(), a.jumps.end(), [&](const Direction& x, const Direction& y) {
    int px = AngularInterval::phase(a.cut, x), py = AngularInterval::phase(a.cut, y);
    if (px != py) return px < py;
    if (px == 0 || px == 2) return false;
    return cross(x, y) > 0;
  });
  const std::size_t m = a.jumps.size();
  if (m == 0) {
    a.arc_spaces.push_back(filtration_stalk(p, f, xi, a.cut, true));
    Subspace w = a.arc_spaces[0];
    detail::check_contained(apply(a.wrap, w), w, "wrap does not preserve the arc space");
    detail::check_contained(w, apply(a.wrap, w), "wrap does not preserve the arc space");
    return a;
  }
  for (std::size_t k = 0; k < m; ++k) {
    a.point_spaces.push_back(filtration_stalk(p, f, xi, a.jumps[k], true));
    Direction sample;
    if (k + 1 < m) {
      sample = interior_direction(a.jumps[k], a.jumps[k + 1]);
    } else {
      // wrap arc: sample on the before side of the cut
      Direction stop = (a.jumps[0] == a.cut) ? a.jumps[0] : a.cut;
      sample = (a.jumps[m - 1] == stop) ? antipode(stop) : interior_direction(a.jumps[m - 1], stop);
    }
    a.arc_spaces.push_back(filtration_stalk(p, f, xi, sample, true));
  }
  // inclusion invariants at every jump, and the wrap gluing
  for (std::size_t k = 0; k < m; ++k) {
    detail::check_contained(a.point_spaces[k], a.arc_spaces[k], "jump stalk not inside its arc");
    const Subspace& before =
        (k == 0) ? apply(a.wrap, a.arc_spaces[m - 1]) : a.arc_spaces[k - 1];
    detail::check_contained(a.point_spaces[k], before, "jump stalk not inside the previous arc");
  }
  if (a.jumps[0] != a.cut) {
    Subspace after = filtration_stalk(p, f, xi, interior_direction(a.cut, a.jumps[0]), true);
    if (after != apply(a.wrap, a.arc_spaces[m - 1]))
      throw InvalidSubsheaf("wrap gluing mismatch across the cut");
  }
  return a;
}

inline ArcSheaf build_arc_subsheaf(const Presentation& p, const GaussianRational& xi) {
  return build_arc_subsheaf(p, make_far_frame(p), xi);
}

/// Cohomology of the cellular circle complex C^0 = (+) point stalks ->
/// C^1 = (+) arc stalks, with the wrap twist on the arc through the cut.
struct CircleCohomology {
  Subspace h0;                // kernel, inside C^0 coordinates
  std::size_t c1_dim = 0;     // ambient dimension of C^1
  Subspace h1_image;          // image of the differential, inside C^1
  std::size_t h0_dim() const { return h0.dim(); }
  std::size_t h1_dim() const { return c1_dim - h1_image.dim(); }
};

inline CircleCohomology circle_cohomology(const ArcSheaf& a) {
  CircleCohomology out;
  const std::size_t m = a.jumps.size();
  if (m == 0) {
    const Subspace& w = a.arc_spaces.at(0);
    const MatQ& b = w.basis();
    MatQ mb = a.wrap * b;
    for (std::size_t i = 0; i < mb.rows(); ++i)
      for (std::size_t j = 0; j < mb.cols(); ++j) mb(i, j) -= b(i, j);
    std::optional<MatQ> x = b.solve(mb);  // (wrap - 1) in the basis of w
    if (!x) throw InvalidSubsheaf("wrap does not preserve the arc space");
    out.h0 = Subspace::span(x->kernel());
    out.c1_dim = w.dim();
    out.h1_image = Subspace::span(*x);
    return out;
  }
  std::vector<std::size_t> poff(m + 1, 0), woff(m + 1, 0);
  for (std::size_t k = 0; k < m; ++k) {
    poff[k + 1] = poff[k] + a.point_spaces[k].dim();
    woff[k + 1] = woff[k] + a.arc_spaces[k].dim();
  }
  std::optional<MatQ> winv = a.wrap.inverse();
  if (!winv) throw InvalidSubsheaf("singular wrap monodromy");
  MatQ d(woff[m], poff[m]);
  for (std::size_t k = 0; k < m; ++k) {
    const MatQ& pb = a.point_spaces[k].basis();
    if (pb.cols() == 0) continue;
    // germ into the arc after the jump
    std::optional<MatQ> into_next = a.arc_spaces[k].basis().solve(pb);
    if (!into_next) throw InvalidSubsheaf("jump stalk not inside its arc");
    // germ into the arc before the jump; through the cut it picks up wrap^{-1}
    std::size_t prev = (k == 0) ? m - 1 : k - 1;
    MatQ germ = (k == 0) ? *winv * pb : pb;
    std::optional<MatQ> into_prev = a.arc_spaces[prev].basis().solve(germ);
    if (!into_prev) throw InvalidSubsheaf("jump stalk not inside the previous arc");
    for (std::size_t c = 0; c < pb.cols(); ++c) {
      for (std::size_t r = 0; r < into_next->rows(); ++r)
        d(woff[k] + r, poff[k] + c) += (*into_next)(r, c);
      for (std::size_t r = 0; r < into_prev->rows(); ++r)
        d(woff[prev] + r, poff[k] + c) -= (*into_prev)(r, c);
    }
  }
  out.h0 = Subspace::span(d.kernel());
  out.c1_dim = woff[m];
  out.h1_image = Subspace::span(d);
  return out;
}

inline CircleCohomology circle_cohomology(const Presentation& p, const FarFrame& f,
                                          const GaussianRational& xi) {
  return circle_cohomology(build_arc_subsheaf(p, f, xi));
}

namespace detail {

/// Deep point for a whole family of parallel half-planes: beyond every
/// exponent level in direction u, far from the hub, off the cut rays, with
/// clean fan segments to every singular point.
inline GaussianRational deep_point_all(const Presentation& p, const FarFrame& f, const Direction& u) {
  GaussianRational uv = dirvec(u);
  GaussianRational pv = dirvec(perp(u));
  Rational u2 = dot(uv, uv);
  Rational need = 0;
  for (std::size_t i = 0; i < p.count(); ++i) {
    Rational d = dot(p.cfg[i] - f.hub, u);
    if (d > need) need = d;
  }
  need += u2 + 1;
  Rational radius = need / u2 + 1;
  while (inf_norm(scaled(radius, uv)) < f.rfar + (64 * inf_norm(pv) + 1) * inf_norm(uv))
    radius *= 2;
  GaussianRational q0 = f.hub + scaled(radius, uv);
  for (int k = 0; k < 129; ++k) {
    long s = (k % 2 == 0) ? k / 2 : -(k / 2 + 1);
    GaussianRational q = q0 + scaled(Rational(s), pv);
    if (on_any_cut_ray(p, q)) continue;
    bool clean = true;
    for (std::size_t i = 0; i < p.count() && clean; ++i)
      for (std::size_t j = 0; j < p.count() && clean; ++j)
        if (j != i && strictly_inside_segment(p.cfg[j], q, p.cfg[i])) clean = false;
    if (clean) return q;
  }
  throw DegeneratePath("no clean family deep point");
}

/// Germ space of the closed half-plane at the caller-provided deep point.
inline Subspace halfplane_germ_at(const Presentation& p, const HalfPlane& h,
                                  const GaussianRational& q) {
  const std::size_t N = p.dimension();
  std::vector<MatQ> condition_rows;
  std::size_t total_rows = 0;
  for (std::size_t i = 0; i < p.count(); ++i) {
    if (!halfplane_contains(h, p.cfg[i])) continue;
    GaussianRational d = p.cfg[i] - q;
    Rational denom = cross(d, p.cut_direction);
    Rational smax = 0;
    if (denom != 0)
      for (std::size_t j = 0; j < p.count(); ++j) {
        Rational s = cross(p.cfg[j] - q, p.cut_direction) / denom;
        Rational t = cross(d, q - p.cfg[j]) / denom;
        if (t > 0 && s > smax && s < 1) smax = s;
      }
    Rational eta = (1 - smax) / 2;
    GaussianRational pi = q + scaled(1 - eta, d);
    while (on_any_cut_ray(p, pi)) {
      eta /= 2;
      pi = q + scaled(1 - eta, d);
    }
    std::vector<Crossing> cs = segment_crossings(p, {q, pi});
    MatQ rows = selector_rows(p, i);
    for (auto it = cs.rbegin(); it != cs.rend(); ++it)
      right_apply_elementary(p, it->ray, it->sgn, rows);
    total_rows += rows.rows();
    condition_rows.push_back(std::move(rows));
  }
  if (condition_rows.empty()) return Subspace::full(N);
  MatQ stacked(total_rows, N);
  std::size_t r0 = 0;
  for (const MatQ& rows : condition_rows) {
    stacked.set_block(r0, 0, rows);
    r0 += rows.rows();
  }
  return Subspace::span(stacked.kernel());
}

}  // namespace detail

/// The unique splitting V = (+) V_i adapted to the good interval of width pi
/// around theta: V_i is the intersection of the ascending flag member at c_i
/// sampled just inside the start of the interval with the descending flag
/// member sampled just inside the end, both carried to a common chart
/// through the interval.  Output is indexed like the exponents and based at
/// the reference point.
inline std::vector<Subspace> good_interval_splitting(const Presentation& p, const FarFrame& f,
                                                     const Direction& theta) {
  if (is_stokes_direction(theta, p.cfg) || is_anti_stokes_direction(theta, p.cfg))
    throw std::invalid_argument("splitting direction must avoid Stokes and anti-Stokes directions");
  const std::size_t n = p.count();
  const std::size_t N = p.dimension();
  Direction start = antipode(perp(theta));
  Direction end = perp(theta);
  AngularInterval good(start, end);
  std::vector<Direction> inside;
  for (const Direction& d : stokes_directions(p.cfg))
    if (good.contains(d)) inside.push_back(d);
  Direction theta_a = theta, theta_e = theta;
  if (!inside.empty()) {
    auto pos_less = [&](const Direction& x, const Direction& y) {
      int px = AngularInterval::phase(start, x), py = AngularInterval::phase(start, y);
      if (px != py) return px < py;
      return cross(x, y) > 0;
    };
    Direction first = *std::min_element(inside.begin(), inside.end(), pos_less);
    Direction last = *std::max_element(inside.begin(), inside.end(), pos_less);
    theta_a = interior_direction(start, first);
    theta_e = interior_direction(last, end);
  }

  GaussianRational qa = detail::deep_point_all(p, f, theta_a);
  GaussianRational qe = detail::deep_point_all(p, f, theta_e);
  std::vector<Crossing> through;
  if (!(qa == qe)) through = far_route_crossings(p, f, qa, qe);

  std::vector<Subspace> parts(n);
  MatQ stacked(N, 0);
  for (std::size_t i = 0; i < n; ++i) {
    Subspace asc =
        detail::halfplane_germ_at(p, filtration_halfplane(p, p.cfg[i], theta_a, false), qa);
    Subspace desc =
        detail::halfplane_germ_at(p, filtration_halfplane(p, p.cfg[i], theta_e, false), qe);
    MatQ desc_basis = desc.basis();
    apply_crossings_inverse(p, through, desc_basis);
    Subspace v = intersect(asc, Subspace::span(desc_basis));
    if (v.dim() != p.blocks.dims[i]) throw SplitFailure("flag intersection has wrong dimension");
    parts[i] = v;
    MatQ wider(N, stacked.cols() + v.dim());
    wider.set_block(0, 0, stacked);
    wider.set_block(0, stacked.cols(), v.basis());
    stacked = std::move(wider);
  }
  if (stacked.rank() != N) throw SplitFailure("flag intersections do not span");

  // carry the splitting forward through the interval to the theta position,
  // then back to the reference chart
  for (std::size_t i = 0; i < n; ++i) parts[i] = base_at_position(p, f, parts[i], qa, theta);
  return parts;
}

inline std::vector<Subspace> good_interval_splitting(const Presentation& p, const Direction& theta) {
  return good_interval_splitting(p, make_far_frame(p), theta);
}

/// Graded pieces and Stokes matrices with respect to a direction: the total
/// monodromy expressed in the adapted basis of the good-interval splitting,
/// factored as S * Q with S block upper unitriangular and Q block lower
/// triangular.  Blocks are ordered by the direction's dominance order.
struct StokesData {
  Direction theta;
  std::vector<GaussianRational> exponents;  // ordered by <_theta
  std::vector<std::size_t> dims;
  MatQ s;
  MatQ q;

  std::size_t count() const { return exponents.size(); }
  std::size_t dimension() const { return std::accumulate(dims.begin(), dims.end(), std::size_t{0}); }
};

enum class StokesDataIssue { ShapeMismatch, BadDirection, BadTriangular, SingularGradedBlock };

inline std::vector<StokesDataIssue> validate_stokes_data(const StokesData& d) {
  std::vector<StokesDataIssue> issues;
  const std::size_t n = d.exponents.size();
  if (n == 0 || d.dims.size() != n) {
    issues.push_back(StokesDataIssue::ShapeMismatch);
    return issues;
  }
  BlockStructure bs(d.dims);
  const std::size_t N = bs.total();
  if (d.s.rows() != N || d.s.cols() != N || d.q.rows() != N || d.q.cols() != N) {
    issues.push_back(StokesDataIssue::ShapeMismatch);
    return issues;
  }
  ExponentConfig cfg{d.exponents};
  if (!cfg.pairwise_distinct()) issues.push_back(StokesDataIssue::ShapeMismatch);
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(cmp_order(d.exponents[i], d.exponents[i + 1], d.theta) == Order::Less))
      issues.push_back(StokesDataIssue::BadDirection);
  if (is_stokes_direction(d.theta, cfg) || is_anti_stokes_direction(d.theta, cfg))
    issues.push_back(StokesDataIssue::BadDirection);
  for (std::size_t i = 0; i < n; ++i) {
    if (!d.q.block(bs.offset(i), bs.offset(i), bs.dims[i], bs.dims[i]).invertible()) {
      issues.push_back(StokesDataIssue::SingularGradedBlock);
      break;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        if (!d.s.block(bs.offset(i), bs.offset(i), bs.dims[i], bs.dims[i]).is_identity()) {
          issues.push_back(StokesDataIssue::BadTriangular);
          return issues;
        }
      } else if (j < i) {
        if (!d.s.block(bs.offset(i), bs.offset(j), bs.dims[i], bs.dims[j]).is_zero()) {
          issues.push_back(StokesDataIssue::BadTriangular);
          return issues;
        }
      } else {
        if (!d.q.block(bs.offset(i), bs.offset(j), bs.dims[i], bs.dims[j]).is_zero()) {
          issues.push_back(StokesDataIssue::BadTriangular);
          return issues;
        }
      }
    }
  return issues;
}

/// Dominance order of the exponents along theta.
inline std::vector<std::size_t> theta_order(const Presentation& p, const Direction& theta) {
  std::vector<std::size_t> order(p.count());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return cmp_order(p.cfg[i], p.cfg[j], theta) == Order::Less;
  });
  return order;
}

/// The forward transform at presentation level: extract the Stokes data of
/// the presentation with respect to a direction.  The adapted basis comes
/// from the splitting over the half turn (theta, theta + pi), whose boundary
/// flags are the filtration stalks at theta and its antipode; that interval
/// is the good interval of perp(theta).
inline StokesData extract_stokes_data(const Presentation& p, const FarFrame& f, const Direction& theta) {
  const std::size_t N = p.dimension();
  std::vector<Subspace> parts = good_interval_splitting(p, f, perp(theta));
  std::vector<std::size_t> order = theta_order(p, theta);
  StokesData d;
  d.theta = theta;
  MatQ change(N, 0);
  for (std::size_t k = 0; k < order.size(); ++k) {
    d.exponents.push_back(p.cfg[order[k]]);
    d.dims.push_back(p.blocks.dims[order[k]]);
    MatQ wider(N, change.cols() + parts[order[k]].dim());
    wider.set_block(0, 0, change);
    wider.set_block(0, change.cols(), parts[order[k]].basis());
    change = std::move(wider);
  }
  std::optional<MatQ> cinv = change.inverse();
  if (!cinv) throw SplitFailure("adapted basis is singular");
  MatQ adapted = *cinv * total_monodromy(p, f) * change;
  auto [s, q] = block_lu(adapted, BlockStructure(d.dims));
  d.s = std::move(s);
  d.q = std::move(q);
  return d;
}

inline StokesData extract_stokes_data(const Presentation& p, const Direction& theta) {
  return extract_stokes_data(p, make_far_frame(p), theta);
}

/// Reference system adapted to a direction: cuts opposite the interval that
/// orders the exponents like theta, base along theta.
inline Direction canonical_cut_for(const Direction& theta) {
  return antipode(perp(theta));
}

/// The inverse transform at presentation level: rebuild a presentation whose
/// Stokes data with respect to d.theta is d itself.
inline Presentation realize_presentation(const StokesData& d, const Direction& cut, const Direction& base) {
  BlockStructure bs(d.dims);
  MatQ t = d.s * d.q;
  std::vector<MatQ> factors = peel_factors(t, bs);
  Presentation p;
  p.cfg.exponents = d.exponents;
  p.blocks = bs;
  p.maps.assign(d.count(), std::vector<MatQ>(d.count()));
  for (std::size_t k = 0; k < d.count(); ++k)
    for (std::size_t j = 0; j < d.count(); ++j)
      p.maps[j][k] = factors[k].block(bs.offset(j), bs.offset(k), bs.dims[j], bs.dims[k]);
  p.cut_direction = cut;
  p.base_direction = base;
  return p;
}

inline Presentation realize_presentation(const StokesData& d) {
  return realize_presentation(d, canonical_cut_for(d.theta), d.theta);
}

}  // namespace stokeslab
