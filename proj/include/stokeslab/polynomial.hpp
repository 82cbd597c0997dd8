#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "stokeslab/matrix.hpp"
#include "stokeslab/numeric.hpp"

namespace stokeslab {

/// Polynomial over Q, coefficients low to high, normalized (no trailing zeros).
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> c) : c_(std::move(c)) { normalize(); }
  static Poly constant(Rational q) { return Poly({std::move(q)}); }

  bool is_zero() const { return c_.empty(); }
  // degree of the zero polynomial is -1
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const Rational& lead() const { return c_.back(); }
  const std::vector<Rational>& coeffs() const { return c_; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return Poly(std::move(c));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(c));
  }

  /// Euclidean division: returns (quotient, remainder).
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
    Poly r = a;
    std::vector<Rational> q(a.c_.size() > b.c_.size() ? a.c_.size() - b.c_.size() + 1 : 1);
    while (!r.is_zero() && r.degree() >= b.degree()) {
      std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
      Rational f = r.lead() / b.lead();
      q[shift] += f;
      std::vector<Rational> rc = r.c_;
      for (std::size_t i = 0; i < b.c_.size(); ++i) rc[i + shift] -= f * b.c_[i];
      r = Poly(std::move(rc));
    }
    return {Poly(std::move(q)), r};
  }

  Poly monic() const {
    if (is_zero()) return Poly();
    std::vector<Rational> c = c_;
    Rational inv = 1 / lead();
    for (auto& x : c) x *= inv;
    return Poly(std::move(c));
  }

 private:
  void normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// Invariant factors of the characteristic matrix xI - A (Smith normal form
/// over Q[x]), monic, nontrivial ones only, in divisibility order.  Two
/// matrices are similar over Q iff these lists coincide; this is the exact
/// rational-canonical-form test.
inline std::vector<Poly> invariant_factors(const MatQ& a) {
  const std::size_t n = a.rows();
  std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Rational> c{Rational(-a(i, j))};
      if (i == j) c.push_back(Rational(1));
      m[i][j] = Poly(std::move(c));
    }

  std::vector<Poly> factors;
  for (std::size_t t = 0; t < n; ++t) {
    // find a nonzero entry of minimal degree in the trailing square
    bool found = false;
    for (bool reduced = false; !reduced;) {
      std::size_t pi = t, pj = t;
      long best = -1;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (!m[i][j].is_zero() && (best < 0 || m[i][j].degree() < best)) {
            best = m[i][j].degree();
            pi = i;
            pj = j;
          }
      if (best < 0) break;
      found = true;
      std::swap(m[pi], m[t]);
      for (std::size_t i = 0; i < n; ++i) std::swap(m[i][pj], m[i][t]);

      reduced = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (m[i][t].is_zero()) continue;
        auto [q, r] = Poly::divmod(m[i][t], m[t][t]);
        for (std::size_t j = t; j < n; ++j) m[i][j] = m[i][j] - q * m[t][j];
        if (!m[i][t].is_zero()) reduced = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (m[t][j].is_zero()) continue;
        auto [q, r] = Poly::divmod(m[t][j], m[t][t]);
        for (std::size_t i = t; i < n; ++i) m[i][j] = m[i][j] - q * m[i][t];
        if (!m[t][j].is_zero()) reduced = false;
      }
      if (reduced) {
        // pivot must divide every remaining entry; merge an offending row in
        for (std::size_t i = t + 1; i < n && reduced; ++i)
          for (std::size_t j = t + 1; j < n && reduced; ++j) {
            auto [q, r] = Poly::divmod(m[i][j], m[t][t]);
            if (!r.is_zero()) {
              for (std::size_t jj = t; jj < n; ++jj) m[t][jj] = m[t][jj] + m[i][jj];
              reduced = false;
            }
          }
      }
    }
    if (!found) break;
    Poly f = m[t][t].monic();
    if (f.degree() >= 1) factors.push_back(f);
  }
  return factors;
}

/// Exact similarity test over Q: identical rational canonical forms.
inline bool similar(const MatQ& a, const MatQ& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) return false;
  return invariant_factors(a) == invariant_factors(b);
}

}  // namespace stokeslab
