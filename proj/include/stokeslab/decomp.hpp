#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "stokeslab/costokes.hpp"

namespace stokeslab {

/// Direct-sum decomposition of the reference fiber, components indexed like
/// the exponents.
struct Decomposition {
  std::size_t ambient = 0;
  std::vector<Subspace> components;
};

inline bool is_direct_sum(const Decomposition& d) {
  MatQ all(d.ambient, 0);
  std::size_t total = 0;
  for (const Subspace& c : d.components) {
    MatQ wider(d.ambient, all.cols() + c.dim());
    wider.set_block(0, 0, all);
    wider.set_block(0, all.cols(), c.basis());
    all = std::move(wider);
    total += c.dim();
  }
  return total == d.ambient && all.rank() == d.ambient;
}

/// Canonical far point with argument theta, past every exponent and off the
/// cut rays.
inline GaussianRational far_point(const Presentation& p, const FarFrame& f, const Direction& theta) {
  Rational t = f.rfar / inf_norm(dirvec(theta));
  GaussianRational pv = dirvec(perp(theta));
  for (int k = 0; k < 129; ++k) {
    GaussianRational fp = f.hub + scale(t, theta) - scaled(Rational(k) * t / 4096, pv);
    if (!on_any_cut_ray(p, fp)) return fp;
  }
  throw DegeneratePath("cannot place the far point off the cut rays");
}

/// The decomposition of the reference fiber induced by the unique
/// trivialization over the good interval around theta.
inline Decomposition stokes_decomposition(const Presentation& p, const FarFrame& f,
                                          const Direction& theta) {
  Decomposition d;
  d.ambient = p.dimension();
  d.components = good_interval_splitting(p, f, theta);
  return d;
}

inline Decomposition stokes_decomposition(const Presentation& p, const Direction& theta) {
  return stokes_decomposition(p, make_far_frame(p), theta);
}

namespace detail {

/// Embedding of the stalk at c_i into the reference fiber along the straight
/// ray from just past c_i in direction theta out to the far point.  When the
/// ray runs along c_i's own cut the route is shifted sideways; the embedded
/// subspace is independent of the side because the elementary matrix fixes
/// F_{c_i} pointwise.
inline Subspace embedded_stalk(const Presentation& p, const FarFrame& f, std::size_t i,
                               const Direction& theta) {
  GaussianRational tv = dirvec(theta);
  GaussianRational pv = dirvec(perp(theta));
  GaussianRational off{Rational(0), Rational(0)};
  if (p.cut_direction == theta) {
    // the ray would run along c_i's own cut; shift sideways below the
    // smallest clearance of the parallel cut lines (the side does not
    // matter: the elementary matrix fixes F_{c_i} pointwise)
    Rational t2 = dot(tv, tv);
    Rational clearance = 0;
    bool found = false;
    for (std::size_t j = 0; j < p.count(); ++j) {
      if (j == i) continue;
      Rational g = abs(cross(p.cfg[j] - p.cfg[i], theta));
      if (!found || g < clearance) {
        clearance = g;
        found = true;
      }
    }
    off = scaled(found ? clearance / (2 * t2) : Rational(1), pv);
  }
  GaussianRational from = p.cfg[i] + off;

  // crossings of the ray from + s * theta, s > 0: since theta is not
  // anti-Stokes the ray meets no other singularity, so every event is a
  // clean transversal crossing
  Rational denom = cross(tv, p.cut_direction);
  std::vector<std::pair<Rational, Crossing>> hits;
  Rational slast = 0;
  if (denom != 0) {
    int sgn = sign(denom) < 0 ? +1 : -1;
    for (std::size_t j = 0; j < p.count(); ++j) {
      Rational s = cross(p.cfg[j] - from, p.cut_direction) / denom;
      Rational t = cross(tv, from - p.cfg[j]) / denom;
      if (s > 0 && t > 0) {
        hits.push_back({s, Crossing{j, sgn}});
        if (s > slast) slast = s;
      }
    }
    std::sort(hits.begin(), hits.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  Rational reach = f.rbig / inf_norm(tv);
  if (slast > reach) reach = slast;
  GaussianRational target = from + scaled(2 * (reach + 1), tv);

  MatQ basis = invariant_subspace(p, i).basis();
  for (const auto& h : hits) left_apply_elementary(p, h.second.ray, h.second.sgn, basis);
  return base_at_position(p, f, Subspace::span(basis), target, theta);
}

}  // namespace detail

/// The decomposition induced by straight Gabrielov paths in direction theta:
/// component i is the intersection of the embedded stalks at all other
/// singularities.
inline Decomposition vanishing_cycle_decomposition(const Presentation& p, const FarFrame& f,
                                                   const Direction& theta) {
  if (is_anti_stokes_direction(theta, p.cfg))
    throw DegeneratePath("rays along an anti-Stokes direction meet other singularities");
  const std::size_t n = p.count();
  std::vector<Subspace> embedded(n);
  for (std::size_t i = 0; i < n; ++i) embedded[i] = detail::embedded_stalk(p, f, i, theta);
  Decomposition d;
  d.ambient = p.dimension();
  d.components.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Subspace w = Subspace::full(p.dimension());
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) w = intersect(w, embedded[j]);
    d.components[i] = w;
  }
  return d;
}

inline Decomposition vanishing_cycle_decomposition(const Presentation& p, const Direction& theta) {
  return vanishing_cycle_decomposition(p, make_far_frame(p), theta);
}

/// Embedded stalks themselves, for the complement identity
/// embedded F_{c_i} = (+)_{k != i} W_k.
inline std::vector<Subspace> embedded_stalks(const Presentation& p, const FarFrame& f,
                                             const Direction& theta) {
  std::vector<Subspace> out(p.count());
  for (std::size_t i = 0; i < p.count(); ++i) out[i] = detail::embedded_stalk(p, f, i, theta);
  return out;
}

struct ComparisonReport {
  bool agree = true;
  std::vector<std::size_t> mismatched;  // exponent indices with unequal components
};

/// Componentwise subspace comparison of the Stokes decomposition with the
/// vanishing cycle decomposition.
inline ComparisonReport compare_decompositions(const Presentation& p, const FarFrame& f,
                                               const Direction& theta) {
  Decomposition a = stokes_decomposition(p, f, theta);
  Decomposition b = vanishing_cycle_decomposition(p, f, theta);
  ComparisonReport r;
  for (std::size_t i = 0; i < p.count(); ++i)
    if (a.components[i] != b.components[i]) {
      r.agree = false;
      r.mismatched.push_back(i);
    }
  return r;
}

inline ComparisonReport compare_decompositions(const Presentation& p, const Direction& theta) {
  return compare_decompositions(p, make_far_frame(p), theta);
}

enum class Stability { Preserved, Violated };

/// Re-bases the direction-theta decomposition at two far points and checks
/// that straight-segment transport carries one to the other.  Both points
/// must dominate every exponent along theta.
inline Stability transport_stability(const Presentation& p, const FarFrame& f, const Direction& theta,
                                     const GaussianRational& a, const GaussianRational& b) {
  for (std::size_t i = 0; i < p.count(); ++i) {
    if (!(cmp_order(p.cfg[i], a, theta) == Order::Less) ||
        !(cmp_order(p.cfg[i], b, theta) == Order::Less))
      throw std::invalid_argument("transport_stability: point does not dominate the exponents");
    if (p.cfg[i] == a || p.cfg[i] == b)
      throw std::invalid_argument("transport_stability: singular endpoint");
  }
  Decomposition d = stokes_decomposition(p, f, theta);
  if (a == b) return Stability::Preserved;

  // the decomposition at a far point x is the splitting carried through the
  // sector from the theta position to x (both dominate the exponents, so
  // their directions lie in the theta half turn)
  GaussianRational fp = position_point(p, f, theta);
  std::vector<Crossing> to_fp = far_route_crossings(p, f, f.ref, fp);
  Direction dfp = direction_of(fp - f.hub);
  auto at_point = [&](const Subspace& c, const GaussianRational& x) {
    MatQ basis = c.basis();
    apply_crossings(p, to_fp, basis);
    if (!(x == fp)) {
      Direction dx = direction_of(x - f.hub);
      if (dx == dfp || cross(dfp, dx) > 0)
        apply_crossings(p, far_route_crossings(p, f, fp, x), basis);
      else
        apply_crossings_inverse(p, far_route_crossings(p, f, x, fp), basis);
    }
    return basis;
  };
  std::vector<Crossing> seg = segment_crossings(p, {a, b});
  for (const Subspace& c : d.components) {
    MatQ at_a = at_point(c, a);
    apply_crossings(p, seg, at_a);
    MatQ at_b = at_point(c, b);
    if (Subspace::span(at_a) != Subspace::span(at_b)) return Stability::Violated;
  }
  return Stability::Preserved;
}

struct TrivialStokesReport {
  enum class Verdict { Pass, Fail, NotApplicable } verdict;
  std::string witness;
};

/// If the total monodromy is the identity, certify that every diagonal block
/// is the identity and every off-diagonal map vanishes (trivial Stokes
/// structure); failure would contradict the equivalence.
inline TrivialStokesReport trivial_stokes_check(const Presentation& p, const FarFrame& f) {
  TrivialStokesReport r{TrivialStokesReport::Verdict::Pass, ""};
  if (!total_monodromy(p, f).is_identity()) {
    r.verdict = TrivialStokesReport::Verdict::NotApplicable;
    r.witness = "total monodromy differs from the identity";
    return r;
  }
  for (std::size_t i = 0; i < p.count(); ++i)
    for (std::size_t j = 0; j < p.count(); ++j) {
      bool ok = (i == j) ? p.maps[i][j].is_identity() : p.maps[i][j].is_zero();
      if (!ok) {
        r.verdict = TrivialStokesReport::Verdict::Fail;
        r.witness = "block (" + std::to_string(i) + "," + std::to_string(j) + ")";
        return r;
      }
    }
  return r;
}

inline TrivialStokesReport trivial_stokes_check(const Presentation& p) {
  return trivial_stokes_check(p, make_far_frame(p));
}

}  // namespace stokeslab
