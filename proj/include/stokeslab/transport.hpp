#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "stokeslab/errors.hpp"
#include "stokeslab/presentation.hpp"

namespace stokeslab {

/// Piecewise-linear path; all transport happens along these.
using Polyline = std::vector<GaussianRational>;

/// One signed passage of a branch-cut ray: +1 when the ray runs left to
/// right across the direction of travel (counterclockwise passage around
/// the ray's singular point).
struct Crossing {
  std::size_t ray;
  int sgn;
};

inline bool on_open_ray(const GaussianRational& x, const GaussianRational& origin, const Direction& u) {
  GaussianRational d = x - origin;
  return cross(d, u) == 0 && dot(d, u) > 0;
}

inline bool on_any_cut_ray(const Presentation& p, const GaussianRational& x) {
  for (std::size_t i = 0; i < p.count(); ++i)
    if (on_open_ray(x, p.cfg[i], p.cut_direction)) return true;
  return false;
}

inline bool strictly_inside_segment(const GaussianRational& x, const GaussianRational& a,
                                    const GaussianRational& b) {
  GaussianRational d = b - a;
  if (cross(x - a, d) != 0) return false;
  Rational t = dot(x - a, d) / dot(d, d);
  return t > 0 && t < 1;
}

/// Throws DegeneratePath when a vertex sits on a singular point or a segment
/// passes through one.
inline void validate_polyline(const Presentation& p, const Polyline& path) {
  for (const auto& v : path)
    for (std::size_t i = 0; i < p.count(); ++i)
      if (v == p.cfg[i]) throw DegeneratePath("polyline vertex at a singular point");
  for (std::size_t s = 0; s + 1 < path.size(); ++s) {
    if (path[s] == path[s + 1]) continue;
    for (std::size_t i = 0; i < p.count(); ++i)
      if (strictly_inside_segment(p.cfg[i], path[s], path[s + 1]))
        throw DegeneratePath("segment through a singular point");
  }
}

/// Ordered signed crossings of the cut rays along the polyline.  Exact
/// segment/ray predicates; vertices on rays and passes through ray origins
/// are degenerate and must be perturbed by the caller.
inline std::vector<Crossing> segment_crossings(const Presentation& p, const Polyline& path) {
  validate_polyline(p, path);
  const Direction& w = p.cut_direction;
  for (const auto& v : path)
    if (on_any_cut_ray(p, v)) throw DegeneratePath("polyline vertex on a cut ray");

  std::vector<Crossing> out;
  for (std::size_t seg = 0; seg + 1 < path.size(); ++seg) {
    const GaussianRational& a = path[seg];
    const GaussianRational& b = path[seg + 1];
    if (a == b) continue;
    GaussianRational d = b - a;
    Rational denom = cross(d, w);
    std::vector<std::pair<Rational, Crossing>> hits;
    for (std::size_t i = 0; i < p.count(); ++i) {
      const GaussianRational& c = p.cfg[i];
      if (denom == 0) {
        // parallel; disjoint unless collinear, and collinear overlap with the
        // open ray would have put a vertex on it (checked above)
        continue;
      }
      Rational s = cross(c - a, w) / denom;
      if (s <= 0 || s >= 1) continue;
      Rational t = cross(d, a - c) / denom;
      if (t == 0) throw DegeneratePath("segment through a singular point");
      if (t < 0) continue;
      hits.push_back({s, Crossing{i, sign(denom) < 0 ? +1 : -1}});
    }
    std::sort(hits.begin(), hits.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& h : hits) out.push_back(h.second);
  }
  return out;
}

/// basis := (product of crossings, first applied first) * basis.
inline void apply_crossings(const Presentation& p, const std::vector<Crossing>& cs, MatQ& basis) {
  for (const Crossing& c : cs) left_apply_elementary(p, c.ray, c.sgn, basis);
}

/// basis := (product of crossings)^{-1} * basis.
inline void apply_crossings_inverse(const Presentation& p, const std::vector<Crossing>& cs, MatQ& basis) {
  for (auto it = cs.rbegin(); it != cs.rend(); ++it)
    left_apply_elementary(p, it->ray, -it->sgn, basis);
}

/// Parallel transport along the polyline: ordered product of elementary
/// matrices over the crossings, identity when there are none.
inline MatQ transport_matrix(const Presentation& p, const Polyline& path) {
  MatQ acc = MatQ::identity(p.dimension());
  apply_crossings(p, segment_crossings(p, path), acc);
  return acc;
}

/// Fixed geometry for basing values: hub (exponent centroid), a radius that
/// dominates the singularities, a walk radius, and the reference point far
/// out in base_direction where every subspace value lives.
struct FarFrame {
  GaussianRational hub;
  Rational rfar;
  Rational rbig;
  GaussianRational ref;
};

namespace detail {

// anchor directions of the far walk, counterclockwise from (1,0)
inline const std::vector<Direction>& walk_anchors() {
  static const std::vector<Direction> a = {
      Direction(1, 0),  Direction(1, 1),  Direction(0, 1),  Direction(-1, 1),
      Direction(-1, 0), Direction(-1, -1), Direction(0, -1), Direction(1, -1)};
  return a;
}

// true when a compass ray from the hub could run along a cut ray
inline bool hub_axis_degenerate(const Presentation& p, const GaussianRational& hub) {
  for (const Direction& a : walk_anchors()) {
    if (cross(a, p.cut_direction) != 0) continue;
    for (std::size_t i = 0; i < p.count(); ++i)
      if (cross(p.cfg[i] - hub, a) == 0) return true;
  }
  return false;
}

}  // namespace detail

inline FarFrame make_far_frame(const Presentation& p) {
  FarFrame f;
  Rational sx = 0, sy = 0;
  for (std::size_t i = 0; i < p.count(); ++i) {
    sx += p.cfg[i].re;
    sy += p.cfg[i].im;
  }
  GaussianRational centroid{Rational(sx / static_cast<long>(p.count())),
                            Rational(sy / static_cast<long>(p.count()))};
  Rational m = 0;
  for (std::size_t i = 0; i < p.count(); ++i) {
    Rational c = inf_norm(p.cfg[i]);
    if (c > m) m = c;
  }
  f.rfar = 4 + 8 * m;
  f.rbig = 64 * f.rfar;
  // nudge the hub perpendicular to the cut direction until no compass ray
  // from it can run along a cut ray; nudges stay below 1
  GaussianRational pw = dirvec(perp(p.cut_direction));
  Rational pwn = inf_norm(pw);
  f.hub = centroid;
  for (int j = 1; detail::hub_axis_degenerate(p, f.hub); ++j) {
    if (j > 64) throw DegeneratePath("cannot place the hub");
    f.hub = centroid + scaled(Rational(j) / (64 * pwn), pw);
  }
  GaussianRational bv = dirvec(p.base_direction);
  GaussianRational pv = dirvec(perp(p.base_direction));
  Rational t = f.rfar / inf_norm(bv);
  for (int k = 0;; ++k) {
    if (k > 256) throw DegeneratePath("cannot place reference point off the cut rays");
    GaussianRational ref = f.hub + scaled(t, bv) + scaled(Rational(k) * t / 4096, pv);
    if (on_any_cut_ray(p, ref)) continue;
    // the radial through ref must not run along a cut ray
    bool collinear = false;
    if (cross(ref - f.hub, p.cut_direction) == 0)
      for (std::size_t i = 0; i < p.count() && !collinear; ++i)
        if (cross(p.cfg[i] - f.hub, ref - f.hub) == 0) collinear = true;
    if (collinear) continue;
    f.ref = ref;
    break;
  }
  return f;
}

namespace detail {

// strictly-between anchors of the ccw arc (from, to), in traversal order
inline std::vector<Direction> anchors_between(const Direction& from, const Direction& to) {
  std::vector<Direction> mid;
  if (from == to) return mid;
  AngularInterval arc(from, to);
  for (const Direction& a : walk_anchors())
    if (arc.contains(a)) mid.push_back(a);
  std::sort(mid.begin(), mid.end(), [&](const Direction& x, const Direction& y) {
    int px = AngularInterval::phase(from, x), py = AngularInterval::phase(from, y);
    if (px != py) return px < py;
    return cross(x, y) > 0;
  });
  return mid;
}

inline GaussianRational square_point(const FarFrame& f, const Rational& radius,
                                     const GaussianRational& dir) {
  return f.hub + scaled(radius / inf_norm(dir), dir);
}

}  // namespace detail

/// Crossings of the deterministic counterclockwise far route from x to y:
/// radially out from the hub, along the big square counterclockwise from
/// x's direction to y's direction, then radially in.  Both points must be
/// far (infinity-norm distance from the hub at least rfar).  Degenerate
/// contacts are escaped by deterministic rescaling and side hops, which
/// never change the route's homotopy class in the far region.
inline std::vector<Crossing> far_route_crossings(const Presentation& p, const FarFrame& f,
                                                 const GaussianRational& x, const GaussianRational& y) {
  if (x == y) return {};
  if (2 * inf_norm(x - f.hub) < f.rfar || 2 * inf_norm(y - f.hub) < f.rfar)
    throw DegeneratePath("far route endpoint too close to the singularities");
  for (int attempt = 0; attempt < 64; ++attempt) {
    Rational rb = f.rbig * (attempt + 1);
    Rational hop = attempt == 0 ? Rational(0) : Rational(attempt) * f.rfar / 8;
    Polyline path;
    path.push_back(x);
    GaussianRational xs = x, ys = y;
    if (hop != 0) {
      xs = x + scaled(hop / inf_norm(x - f.hub), {Rational(-(x - f.hub).im), Rational((x - f.hub).re)});
      ys = y + scaled(hop / inf_norm(y - f.hub), {Rational(-(y - f.hub).im), Rational((y - f.hub).re)});
      path.push_back(xs);
    }
    GaussianRational dx = xs - f.hub, dy = ys - f.hub;
    Direction du = direction_of(dx), dv = direction_of(dy);
    path.push_back(detail::square_point(f, rb, dx));
    for (const Direction& a : detail::anchors_between(du, dv))
      path.push_back(detail::square_point(f, rb, dirvec(a)));
    path.push_back(detail::square_point(f, rb, dy));
    if (hop != 0) path.push_back(ys);
    path.push_back(y);
    Polyline dedup;
    for (const auto& v : path)
      if (dedup.empty() || !(dedup.back() == v)) dedup.push_back(v);
    try {
      return segment_crossings(p, dedup);
    } catch (const DegeneratePath&) {
      continue;
    }
  }
  throw DegeneratePath("far route could not avoid degeneracies");
}

/// Transport of the full counterclockwise loop based at the reference point.
/// This is the total monodromy of the presentation: the product of the
/// elementary matrices in the crossing order of the cut system.
inline MatQ total_monodromy(const Presentation& p, const FarFrame& f) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Rational rb = f.rbig * (attempt + 1);
    GaussianRational d = f.ref - f.hub;
    Polyline path;
    path.push_back(f.ref);
    GaussianRational start = detail::square_point(f, rb, d);
    path.push_back(start);
    Direction du = direction_of(d);
    std::vector<Direction> order;
    for (const Direction& a : detail::walk_anchors())
      if (a != du) order.push_back(a);
    std::sort(order.begin(), order.end(), [&](const Direction& a, const Direction& b) {
      int pa = AngularInterval::phase(du, a), pb = AngularInterval::phase(du, b);
      if (pa != pb) return pa < pb;
      return cross(a, b) > 0;
    });
    for (const Direction& a : order) path.push_back(detail::square_point(f, rb, dirvec(a)));
    path.push_back(start);
    path.push_back(f.ref);
    try {
      MatQ acc = MatQ::identity(p.dimension());
      apply_crossings(p, segment_crossings(p, path), acc);
      return acc;
    } catch (const DegeneratePath&) {
      continue;
    }
  }
  throw DegeneratePath("monodromy loop could not avoid degeneracies");
}

inline MatQ total_monodromy(const Presentation& p) { return total_monodromy(p, make_far_frame(p)); }

/// Far point at an exact direction, nudged off the cut rays when necessary.
/// The nudge never moves the point across the reference direction, so the
/// side of the base cut (and hence the chart under counterclockwise
/// pull-back) stays determined by the exact position: a position at the
/// reference direction itself resolves to the counterclockwise side.
inline GaussianRational position_point(const Presentation& p, const FarFrame& f, const Direction& pos) {
  GaussianRational v = dirvec(pos);
  Rational t = f.rbig / inf_norm(v);
  GaussianRational pv = dirvec(perp(pos));
  GaussianRational dr = f.ref - f.hub;
  int side = sign(cross(dr, v));
  bool at_ref = side == 0 && sign(dot(dr, v)) > 0;
  for (int k = 0; k < 257; ++k) {
    long c = (k % 2 == 1) ? (k + 1) / 2 : -(k / 2);
    GaussianRational fp = f.hub + scaled(t, v) + scaled(Rational(c) * t / 4096, pv);
    if (on_any_cut_ray(p, fp)) continue;
    int fp_side = sign(cross(dr, fp - f.hub));
    if (at_ref && fp_side < 0) continue;
    if (side != 0 && fp_side != side) continue;
    return fp;
  }
  throw DegeneratePath("cannot place a position point off the cut rays");
}

/// Pull a raw far value back to the reference chart through an explicit
/// position: the value at x is first carried to the far point at exactly
/// `position` (short way around), then identified with the reference stalk
/// along counterclockwise continuation from the reference direction.
/// Pinning the position keeps the chart deterministic even though deep
/// points sit slightly off their nominal directions.
inline Subspace base_at_position(const Presentation& p, const FarFrame& f, const Subspace& raw,
                                 const GaussianRational& x, const Direction& position) {
  GaussianRational fp = position_point(p, f, position);
  MatQ basis = raw.basis();
  if (!(x == fp)) {
    // short way around, judged by the actual endpoints
    Direction dx = direction_of(x - f.hub);
    Direction dfp = direction_of(fp - f.hub);
    if (dx == dfp || cross(dx, dfp) > 0) {
      apply_crossings(p, far_route_crossings(p, f, x, fp), basis);
    } else {
      apply_crossings_inverse(p, far_route_crossings(p, f, fp, x), basis);
    }
  }
  apply_crossings_inverse(p, far_route_crossings(p, f, f.ref, fp), basis);
  return Subspace::span(basis);
}

namespace detail {

inline MatQ selector_rows(const Presentation& p, std::size_t i) {
  MatQ sel(p.blocks.dims[i], p.dimension());
  for (std::size_t r = 0; r < p.blocks.dims[i]; ++r) sel(r, p.blocks.offset(i) + r) = 1;
  return sel;
}

}  // namespace detail

/// Deep reference point of a closed half-plane: on the inward normal through
/// the anchor, beyond every singular point, far from the hub, off the cut
/// rays, with every fan segment to a contained singularity clean.  The
/// jitter runs along the boundary direction, which preserves depth.
inline GaussianRational deep_point(const Presentation& p, const FarFrame& f, const HalfPlane& h) {
  GaussianRational uv = dirvec(h.normal);
  GaussianRational pv = dirvec(perp(h.normal));
  Rational u2 = dot(uv, uv);
  Rational need = 1;
  for (std::size_t i = 0; i < p.count(); ++i) {
    Rational d = dot(p.cfg[i] - h.anchor, h.normal);
    if (d > need) need = d;
  }
  Rational radius = (need + 1) / u2;
  while (inf_norm(h.anchor + scaled(radius, uv) - f.hub) <
         f.rfar + (64 * inf_norm(pv) + 1) * inf_norm(uv))
    radius *= 2;
  GaussianRational q0 = h.anchor + scaled(radius, uv);
  for (int k = 0; k < 129; ++k) {
    long s = (k % 2 == 0) ? k / 2 : -(k / 2 + 1);
    GaussianRational q = q0 + scaled(Rational(s), pv);
    if (on_any_cut_ray(p, q)) continue;
    bool clean = true;
    for (std::size_t i = 0; i < p.count() && clean; ++i) {
      if (!halfplane_contains(h, p.cfg[i])) continue;
      for (std::size_t j = 0; j < p.count() && clean; ++j)
        if (j != i && strictly_inside_segment(p.cfg[j], q, p.cfg[i])) clean = false;
    }
    if (clean) return q;
  }
  throw DegeneratePath("no clean deep point");
}

/// Sections of the sheaf over the closed half-plane, as the germ space at a
/// deep point q: the exact solution space of the extension conditions, one
/// block of linear equations per singular point contained in the half-plane
/// (the continued germ there must lie in F_{c_i}).
inline Subspace halfplane_germ(const Presentation& p, const FarFrame& f, const HalfPlane& h,
                               GaussianRational* where = nullptr) {
  const std::size_t N = p.dimension();
  GaussianRational q = deep_point(p, f, h);
  if (where) *where = q;

  std::vector<MatQ> condition_rows;
  std::size_t total_rows = 0;
  for (std::size_t i = 0; i < p.count(); ++i) {
    if (!halfplane_contains(h, p.cfg[i])) continue;
    // stop just short of c_i, past the last ray crossing of [q, c_i]
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
    MatQ rows = detail::selector_rows(p, i);
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

/// Sections over a closed half-plane, based at the reference point in the
/// chart of the half-plane's normal direction.  Dimension equals the sum of
/// d_k over the exponents outside the half-plane; that identity is a theorem
/// about valid presentations and is what the selftest asserts.
inline Subspace halfplane_sections(const Presentation& p, const FarFrame& f, const HalfPlane& h) {
  GaussianRational q;
  Subspace raw = halfplane_germ(p, f, h, &q);
  return base_at_position(p, f, raw, q, h.normal);
}

inline Subspace halfplane_sections(const Presentation& p, const HalfPlane& h) {
  return halfplane_sections(p, make_far_frame(p), h);
}

}  // namespace stokeslab
