#pragma once

#include <algorithm>
#include <compare>
#include <stdexcept>
#include <vector>

#include "stokeslab/numeric.hpp"

namespace stokeslab {

/// Exact point of the complex plane, re + i*im with rational coordinates.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(long r, long i) : re(r), im(i) {}

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {Rational(a.re + b.re), Rational(a.im + b.im)};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {Rational(a.re - b.re), Rational(a.im - b.im)};
  }
};

/// Primitive integer vector (x, y), standing for the ray direction with
/// cos:sin = x:y.  Angles never materialize; every angular predicate is a
/// sign test on dot and cross products.
struct Direction {
  Integer x;
  Integer y;

  Direction() : x(1), y(0) {}
  Direction(Integer px, Integer py) : x(std::move(px)), y(std::move(py)) { normalize(); }
  Direction(long px, long py) : x(px), y(py) { normalize(); }

  void normalize() {
    if (x == 0 && y == 0) throw std::invalid_argument("zero direction");
    Integer g = gcd(x, y);
    x /= g;
    y /= g;
  }

  friend bool operator==(const Direction& a, const Direction& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Direction& a, const Direction& b) { return !(a == b); }
};

inline Direction perp(const Direction& u) { return Direction(Integer(-u.y), u.x); }
inline Direction antipode(const Direction& u) { return Direction(Integer(-u.x), Integer(-u.y)); }

inline Integer cross(const Direction& a, const Direction& b) { return Integer(a.x * b.y - a.y * b.x); }
inline Integer dot(const Direction& a, const Direction& b) { return Integer(a.x * b.x + a.y * b.y); }

inline Rational dot(const GaussianRational& w, const Direction& u) {
  return Rational(w.re * u.x + w.im * u.y);
}
inline Rational cross(const GaussianRational& w, const Direction& u) {
  return Rational(w.re * u.y - w.im * u.x);
}
inline Rational cross(const GaussianRational& w, const GaussianRational& v) {
  return Rational(w.re * v.im - w.im * v.re);
}
inline Rational dot(const GaussianRational& w, const GaussianRational& v) {
  return Rational(w.re * v.re + w.im * v.im);
}

inline GaussianRational scale(const Rational& t, const Direction& u) {
  return {Rational(t * u.x), Rational(t * u.y)};
}

inline GaussianRational dirvec(const Direction& u) { return {Rational(u.x), Rational(u.y)}; }

inline GaussianRational scaled(const Rational& t, const GaussianRational& v) {
  return {Rational(t * v.re), Rational(t * v.im)};
}

inline Rational inf_norm(const GaussianRational& v) {
  Rational a = abs(v.re), b = abs(v.im);
  return a > b ? a : b;
}

/// Primitive direction of a nonzero rational vector.
inline Direction direction_of(const GaussianRational& v) {
  if (v.re == 0 && v.im == 0) throw std::invalid_argument("direction of zero vector");
  Integer a = v.re.get_num() * v.im.get_den();
  Integer b = v.im.get_num() * v.re.get_den();
  return Direction(a, b);
}

// Half index 0 covers angles [0, pi), half 1 covers [pi, 2*pi).
inline int half_index(const Direction& u) {
  if (u.y > 0 || (u.y == 0 && u.x > 0)) return 0;
  return 1;
}

/// Strict circular order starting at direction (1,0), counterclockwise.
inline bool circular_less(const Direction& a, const Direction& b) {
  int ha = half_index(a), hb = half_index(b);
  if (ha != hb) return ha < hb;
  return cross(a, b) > 0;
}

inline void circular_sort(std::vector<Direction>& dirs) {
  std::sort(dirs.begin(), dirs.end(), circular_less);
  dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
}

enum class Order { Less, OnLine, Greater };

/// a <_theta b test: Less iff dot(b - a, u) > 0.
inline Order cmp_order(const GaussianRational& a, const GaussianRational& b, const Direction& u) {
  int s = sign(dot(b - a, u));
  if (s > 0) return Order::Less;
  if (s == 0) return Order::OnLine;
  return Order::Greater;
}

/// Open counterclockwise arc from start to end; length in (0, 2*pi).
struct AngularInterval {
  Direction start;
  Direction end;

  AngularInterval(Direction s, Direction e) : start(std::move(s)), end(std::move(e)) {
    if (start == end) throw std::invalid_argument("degenerate angular interval");
  }

  // Position class of d relative to start: 0 on the start ray, 1 strictly in
  // the first half turn, 2 antipodal, 3 strictly in the second half turn.
  static int phase(const Direction& s, const Direction& d) {
    Integer c = cross(s, d);
    if (c > 0) return 1;
    if (c < 0) return 3;
    return dot(s, d) > 0 ? 0 : 2;
  }

  bool contains(const Direction& d) const {
    int pd = phase(start, d), pe = phase(start, end);
    if (pd == 0) return false;
    if (pd != pe) return pd < pe;
    if (pd == 2) return false;  // d antipodal and end antipodal: equal positions
    return cross(d, end) > 0;
  }
};

/// Closed or open half-plane {x : dot(x - anchor, normal) >= 0 resp. > 0}.
struct HalfPlane {
  GaussianRational anchor;
  Direction normal;
  bool closed = true;
};

enum class Side { Inside, Boundary, Outside };

inline Side halfplane_side(const HalfPlane& h, const GaussianRational& x) {
  int s = sign(dot(x - h.anchor, h.normal));
  if (s > 0) return Side::Inside;
  if (s == 0) return Side::Boundary;
  return Side::Outside;
}

inline bool halfplane_contains(const HalfPlane& h, const GaussianRational& x) {
  Side s = halfplane_side(h, x);
  return s == Side::Inside || (h.closed && s == Side::Boundary);
}

/// Ordered list of pairwise distinct exponents c_1..c_n.
struct ExponentConfig {
  std::vector<GaussianRational> exponents;

  std::size_t size() const { return exponents.size(); }
  const GaussianRational& operator[](std::size_t i) const { return exponents[i]; }

  bool pairwise_distinct() const {
    for (std::size_t i = 0; i < exponents.size(); ++i)
      for (std::size_t j = i + 1; j < exponents.size(); ++j)
        if (exponents[i] == exponents[j]) return false;
    return true;
  }
};

/// Directions where two exponents have equal projection: perpendicular to
/// c_i - c_j, both signs, circularly sorted.
inline std::vector<Direction> stokes_directions(const ExponentConfig& cfg) {
  std::vector<Direction> out;
  for (std::size_t i = 0; i < cfg.size(); ++i)
    for (std::size_t j = i + 1; j < cfg.size(); ++j) {
      Direction d = direction_of(cfg[i] - cfg[j]);
      out.push_back(perp(d));
      out.push_back(antipode(perp(d)));
    }
  circular_sort(out);
  return out;
}

/// Directions parallel to some difference c_i - c_j, both signs.
inline std::vector<Direction> anti_stokes_directions(const ExponentConfig& cfg) {
  std::vector<Direction> out;
  for (std::size_t i = 0; i < cfg.size(); ++i)
    for (std::size_t j = i + 1; j < cfg.size(); ++j) {
      Direction d = direction_of(cfg[i] - cfg[j]);
      out.push_back(d);
      out.push_back(antipode(d));
    }
  circular_sort(out);
  return out;
}

/// Directions perpendicular to c_i - xi for c_i != xi: where the filtration
/// stalk at xi jumps.
inline std::vector<Direction> crossing_directions(const GaussianRational& xi, const ExponentConfig& cfg) {
  std::vector<Direction> out;
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    if (cfg[i] == xi) continue;
    Direction d = direction_of(cfg[i] - xi);
    out.push_back(perp(d));
    out.push_back(antipode(perp(d)));
  }
  circular_sort(out);
  return out;
}

inline bool is_stokes_direction(const Direction& u, const ExponentConfig& cfg) {
  for (std::size_t i = 0; i < cfg.size(); ++i)
    for (std::size_t j = i + 1; j < cfg.size(); ++j)
      if (dot(cfg[i] - cfg[j], u) == 0) return true;
  return false;
}

inline bool is_anti_stokes_direction(const Direction& u, const ExponentConfig& cfg) {
  for (std::size_t i = 0; i < cfg.size(); ++i)
    for (std::size_t j = i + 1; j < cfg.size(); ++j)
      if (cross(cfg[i] - cfg[j], u) == 0) return true;
  return false;
}

enum class IntervalClass { Good, Small, Neither };

/// Good: exactly one Stokes direction per exponent pair lies in I.
/// Small: at most one.  Good takes precedence when both hold.
inline IntervalClass classify_interval(const AngularInterval& I, const ExponentConfig& cfg) {
  bool all_exactly_one = true;
  for (std::size_t i = 0; i < cfg.size(); ++i)
    for (std::size_t j = i + 1; j < cfg.size(); ++j) {
      Direction u = perp(direction_of(cfg[i] - cfg[j]));
      int count = (I.contains(u) ? 1 : 0) + (I.contains(antipode(u)) ? 1 : 0);
      if (count > 1) return IntervalClass::Neither;
      if (count == 0) all_exactly_one = false;
    }
  return all_exactly_one ? IntervalClass::Good : IntervalClass::Small;
}

/// Deterministic primitive direction strictly inside the counterclockwise
/// arc (a, b).  Mediant-style: sum of the endpoints, negated when the arc is
/// the long way around; perpendicular for antipodal endpoints.
inline Direction interior_direction(const Direction& a, const Direction& b) {
  if (a == b) throw std::invalid_argument("interior_direction: empty arc");
  Integer c = cross(a, b);
  if (c == 0) return perp(a);  // antipodal
  Integer sx = a.x + b.x, sy = a.y + b.y;
  if (c > 0) return Direction(sx, sy);
  return Direction(Integer(-sx), Integer(-sy));
}

}  // namespace stokeslab
