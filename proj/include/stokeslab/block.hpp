#pragma once

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "stokeslab/errors.hpp"
#include "stokeslab/matrix.hpp"

namespace stokeslab {

/// Partition of {0..N-1} into consecutive blocks of sizes d_1..d_n, all >= 1.
struct BlockStructure {
  std::vector<std::size_t> dims;

  BlockStructure() = default;
  explicit BlockStructure(std::vector<std::size_t> d) : dims(std::move(d)) {
    for (std::size_t di : dims)
      if (di == 0) throw DimensionMismatch("zero block dimension");
  }

  std::size_t count() const { return dims.size(); }
  std::size_t total() const { return std::accumulate(dims.begin(), dims.end(), std::size_t{0}); }
  std::size_t offset(std::size_t k) const {
    return std::accumulate(dims.begin(), dims.begin() + k, std::size_t{0});
  }
};

/// T = S * Q with S block upper unitriangular (identity diagonal blocks,
/// zero below) and Q block lower triangular.  Unique; computed from the
/// trailing block column inward.  Throws SingularPivot when a pivot block
/// system is unsolvable, which signals invalid Stokes data or a wrong
/// exponent ordering.
inline std::pair<MatQ, MatQ> block_lu(const MatQ& t, const BlockStructure& bs) {
  const std::size_t n = bs.count();
  const std::size_t N = bs.total();
  if (t.rows() != N || t.cols() != N) throw DimensionMismatch("block_lu shape");

  MatQ s = MatQ::identity(N);
  MatQ q(N, N);
  MatQ work = t;
  for (std::size_t kk = n; kk-- > 0;) {
    const std::size_t ok = bs.offset(kk), dk = bs.dims[kk];
    for (std::size_t j = 0; j <= kk; ++j)
      q.set_block(ok, bs.offset(j), work.block(ok, bs.offset(j), dk, bs.dims[j]));
    if (kk == 0) break;
    MatQ qkk = work.block(ok, ok, dk, dk);
    std::optional<MatQ> qkk_inv = qkk.inverse();
    if (!qkk_inv) throw SingularPivot("block_lu: singular pivot block");
    for (std::size_t i = 0; i < kk; ++i) {
      const std::size_t oi = bs.offset(i), di = bs.dims[i];
      MatQ sik = work.block(oi, ok, di, dk) * *qkk_inv;
      s.set_block(oi, ok, sik);
      for (std::size_t j = 0; j < kk; ++j) {
        const std::size_t oj = bs.offset(j), dj = bs.dims[j];
        MatQ upd = work.block(oi, oj, di, dj) - sik * work.block(ok, oj, dk, dj);
        work.set_block(oi, oj, upd);
      }
    }
  }
  return {std::move(s), std::move(q)};
}

/// Matrix equal to the identity outside block column k, with that column
/// given by the stacked blocks of `column` (an N x d_k matrix).
inline MatQ elementary_from_column(const MatQ& column, const BlockStructure& bs, std::size_t k) {
  MatQ e = MatQ::identity(bs.total());
  e.set_block(0, bs.offset(k), column);
  return e;
}

/// Inverse of an elementary block-column matrix, same shape family.
inline MatQ elementary_inverse(const MatQ& e, const BlockStructure& bs, std::size_t k) {
  const std::size_t ok = bs.offset(k), dk = bs.dims[k];
  std::optional<MatQ> dinv = e.block(ok, ok, dk, dk).inverse();
  if (!dinv) throw SingularPivot("elementary factor with singular diagonal block");
  MatQ inv = MatQ::identity(bs.total());
  for (std::size_t j = 0; j < bs.count(); ++j) {
    if (j == k) {
      inv.set_block(ok, ok, *dinv);
      continue;
    }
    const std::size_t oj = bs.offset(j), dj = bs.dims[j];
    MatQ bj = e.block(oj, ok, dj, dk);
    if (bj.is_zero()) continue;
    MatQ z(dj, dk);
    inv.set_block(oj, ok, z - bj * *dinv);
  }
  return inv;
}

/// Factors T = T_n * ... * T_1 with T_k equal to the identity outside block
/// column k (column vectors, T_1 applied first).  Returned in index order
/// T_1..T_n.  Block column n of T is block column n of T_n; recurse on
/// T_n^{-1} * T.
inline std::vector<MatQ> peel_factors(const MatQ& t, const BlockStructure& bs) {
  const std::size_t n = bs.count();
  const std::size_t N = bs.total();
  if (t.rows() != N || t.cols() != N) throw DimensionMismatch("peel_factors shape");

  std::vector<MatQ> factors(n, MatQ());
  MatQ work = t;
  for (std::size_t kk = n; kk-- > 0;) {
    const std::size_t ok = bs.offset(kk), dk = bs.dims[kk];
    MatQ column = work.block(0, ok, N, dk);
    if (work.block(ok, ok, dk, dk).det() == 0)
      throw SingularPivot("peel_factors: singular diagonal block");
    MatQ factor = elementary_from_column(column, bs, kk);
    factors[kk] = factor;
    work = elementary_inverse(factor, bs, kk) * work;
  }
  return factors;
}

}  // namespace stokeslab
