#pragma once

#include <cstddef>

#include "stokeslab/errors.hpp"
#include "stokeslab/matrix.hpp"

namespace stokeslab {

/// Subspace of Q^N with a canonical basis: the columns of basis() transpose
/// to a reduced row echelon form, so equal subspaces have equal
/// representations and operator== is subspace equality.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(std::size_t ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = MatQ(ambient, 0);
    return s;
  }

  static Subspace full(std::size_t ambient) { return span(MatQ::identity(ambient)); }

  /// Column span of an N x m generator matrix, canonicalized.
  static Subspace span(const MatQ& generators) {
    MatQ rows = generators.transpose();
    std::size_t rank = rows.rref().size();
    Subspace s;
    s.ambient_ = generators.rows();
    s.basis_ = MatQ(s.ambient_, rank);
    for (std::size_t r = 0; r < rank; ++r)
      for (std::size_t j = 0; j < s.ambient_; ++j) s.basis_(j, r) = rows(r, j);
    return s;
  }

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.cols(); }
  const MatQ& basis() const { return basis_; }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

  bool contains(const MatQ& vectors) const {
    if (vectors.rows() != ambient_) throw DimensionMismatch("contains: ambient mismatch");
    return basis_.solve(vectors).has_value();
  }

  bool contains(const Subspace& other) const { return contains(other.basis_); }

 private:
  std::size_t ambient_ = 0;
  MatQ basis_;
};

inline Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw DimensionMismatch("sum: ambient mismatch");
  MatQ gen(a.ambient(), a.dim() + b.dim());
  gen.set_block(0, 0, a.basis());
  gen.set_block(0, a.dim(), b.basis());
  return Subspace::span(gen);
}

inline Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw DimensionMismatch("intersect: ambient mismatch");
  MatQ joint(a.ambient(), a.dim() + b.dim());
  joint.set_block(0, 0, a.basis());
  joint.set_block(0, a.dim(), b.basis());
  MatQ ker = joint.kernel();
  MatQ coeff = ker.block(0, 0, a.dim(), ker.cols());
  return Subspace::span(a.basis() * coeff);
}

inline bool equal(const Subspace& a, const Subspace& b) { return a == b; }

/// Decides A + span(M) == B + span(M).
inline bool quotient_compare(const Subspace& a, const Subspace& b, const MatQ& modulus) {
  Subspace m = Subspace::span(modulus);
  return sum(a, m) == sum(b, m);
}

/// Image of a subspace under an invertible map.
inline Subspace apply(const MatQ& map, const Subspace& s) {
  return Subspace::span(map * s.basis());
}

}  // namespace stokeslab
