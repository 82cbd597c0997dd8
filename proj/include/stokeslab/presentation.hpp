#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "stokeslab/block.hpp"
#include "stokeslab/matrix.hpp"
#include "stokeslab/plane.hpp"
#include "stokeslab/subspace.hpp"

namespace stokeslab {

/// A constructible sheaf on C with vanishing cohomology, presented by
/// vanishing-cycle blocks U_i (dimensions d_i) and maps T_ij, together with
/// the reference system that pins every path-dependent quantity: branch cuts
/// are the rays c_i + t*cut_direction (t > 0) and all values are based at a
/// reference point far out in base_direction.
///
/// Crossing the cut ray of c_i counterclockwise applies elementary_matrix(i)
/// to the trivialization of the cut complement; the stalk at c_i is the
/// coordinate subspace F_{c_i} = (+)_{k != i} U_k, on which that matrix acts
/// as the identity.
struct Presentation {
  ExponentConfig cfg;
  BlockStructure blocks;
  std::vector<std::vector<MatQ>> maps;  // maps[i][j] = T_ij, shape d_i x d_j
  Direction cut_direction;
  Direction base_direction;

  std::size_t count() const { return cfg.size(); }
  std::size_t dimension() const { return blocks.total(); }
};

enum class ValidationIssue {
  DuplicateExponent,
  SingularDiagonalBlock,
  ShapeMismatch,
  BadReferenceDirection,
};

inline const char* to_string(ValidationIssue v) {
  switch (v) {
    case ValidationIssue::DuplicateExponent: return "DuplicateExponent";
    case ValidationIssue::SingularDiagonalBlock: return "SingularDiagonalBlock";
    case ValidationIssue::ShapeMismatch: return "ShapeMismatch";
    case ValidationIssue::BadReferenceDirection: return "BadReferenceDirection";
  }
  return "?";
}

inline std::vector<ValidationIssue> validate(const Presentation& p) {
  std::vector<ValidationIssue> issues;
  const std::size_t n = p.cfg.size();
  if (n == 0 || p.blocks.count() != n || p.maps.size() != n) {
    issues.push_back(ValidationIssue::ShapeMismatch);
    return issues;
  }
  bool shapes_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (p.blocks.dims[i] == 0) shapes_ok = false;
    if (p.maps[i].size() != n) {
      shapes_ok = false;
      continue;
    }
    for (std::size_t j = 0; j < n; ++j)
      if (p.maps[i][j].rows() != p.blocks.dims[i] || p.maps[i][j].cols() != p.blocks.dims[j])
        shapes_ok = false;
  }
  if (!shapes_ok) {
    issues.push_back(ValidationIssue::ShapeMismatch);
    return issues;
  }
  if (!p.cfg.pairwise_distinct()) issues.push_back(ValidationIssue::DuplicateExponent);
  for (std::size_t i = 0; i < n; ++i)
    if (!p.maps[i][i].invertible()) {
      issues.push_back(ValidationIssue::SingularDiagonalBlock);
      break;
    }
  if (issues.empty()) {
    if (is_anti_stokes_direction(p.cut_direction, p.cfg) ||
        is_stokes_direction(p.base_direction, p.cfg) ||
        is_anti_stokes_direction(p.base_direction, p.cfg))
      issues.push_back(ValidationIssue::BadReferenceDirection);
  }
  return issues;
}

inline bool is_valid(const Presentation& p) { return validate(p).empty(); }

/// N x d_k block column of elementary_matrix(p, k) (sign +1) or of its
/// inverse (sign -1); everything outside this column is the identity.
inline MatQ elementary_column(const Presentation& p, std::size_t k, int sgn) {
  const std::size_t N = p.dimension();
  const std::size_t dk = p.blocks.dims[k];
  MatQ col(N, dk);
  if (sgn >= 0) {
    for (std::size_t j = 0; j < p.count(); ++j) col.set_block(p.blocks.offset(j), 0, p.maps[j][k]);
    return col;
  }
  std::optional<MatQ> dinv = p.maps[k][k].inverse();
  if (!dinv) throw SingularPivot("presentation with singular diagonal block");
  for (std::size_t j = 0; j < p.count(); ++j) {
    if (j == k) {
      col.set_block(p.blocks.offset(j), 0, *dinv);
      continue;
    }
    MatQ z(p.blocks.dims[j], dk);
    col.set_block(p.blocks.offset(j), 0, z - p.maps[j][k] * *dinv);
  }
  return col;
}

/// Identity except block column k, whose (j,k) block is T_jk.
inline MatQ elementary_matrix(const Presentation& p, std::size_t k) {
  return elementary_from_column(elementary_column(p, k, +1), p.blocks, k);
}

/// m := elementary_matrix(p,k)^{sgn} * m, touching only the block-k rows' image.
inline void left_apply_elementary(const Presentation& p, std::size_t k, int sgn, MatQ& m) {
  const std::size_t ok = p.blocks.offset(k), dk = p.blocks.dims[k];
  MatQ col = elementary_column(p, k, sgn);
  MatQ top = m.block(ok, 0, dk, m.cols());
  for (std::size_t j = 0; j < p.count(); ++j) {
    const std::size_t oj = p.blocks.offset(j), dj = p.blocks.dims[j];
    MatQ bjk = col.block(oj, 0, dj, dk);
    if (j == k) {
      m.set_block(oj, 0, bjk * top);
    } else {
      if (bjk.is_zero()) continue;
      m.set_block(oj, 0, m.block(oj, 0, dj, m.cols()) + bjk * top);
    }
  }
}

/// m := m * elementary_matrix(p,k)^{sgn}, touching only block column k.
inline void right_apply_elementary(const Presentation& p, std::size_t k, int sgn, MatQ& m) {
  const std::size_t ok = p.blocks.offset(k), dk = p.blocks.dims[k];
  MatQ col = elementary_column(p, k, sgn);
  MatQ acc(m.rows(), dk);
  for (std::size_t j = 0; j < p.count(); ++j) {
    const std::size_t oj = p.blocks.offset(j), dj = p.blocks.dims[j];
    MatQ bjk = col.block(oj, 0, dj, dk);
    if (bjk.is_zero()) continue;
    acc = acc + m.block(0, oj, m.rows(), dj) * bjk;
  }
  m.set_block(0, ok, acc);
}

/// Coordinate subspace U_i.
inline Subspace coordinate_block(const Presentation& p, std::size_t i) {
  const std::size_t N = p.dimension();
  MatQ gen(N, p.blocks.dims[i]);
  for (std::size_t r = 0; r < p.blocks.dims[i]; ++r) gen(p.blocks.offset(i) + r, r) = 1;
  return Subspace::span(gen);
}

/// Coordinate subspace F_{c_i} = (+)_{k != i} U_k.
inline Subspace invariant_subspace(const Presentation& p, std::size_t i) {
  const std::size_t N = p.dimension();
  MatQ gen(N, N - p.blocks.dims[i]);
  std::size_t col = 0;
  for (std::size_t j = 0; j < p.count(); ++j) {
    if (j == i) continue;
    for (std::size_t r = 0; r < p.blocks.dims[j]; ++r) gen(p.blocks.offset(j) + r, col++) = 1;
  }
  return Subspace::span(gen);
}

/// F_{c_i} at singularities, the full fiber elsewhere.
inline Subspace stalk(const Presentation& p, const GaussianRational& xi) {
  for (std::size_t i = 0; i < p.count(); ++i)
    if (p.cfg[i] == xi) return invariant_subspace(p, i);
  return Subspace::full(p.dimension());
}

}  // namespace stokeslab
