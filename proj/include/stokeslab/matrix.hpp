#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "stokeslab/errors.hpp"
#include "stokeslab/numeric.hpp"

namespace stokeslab {

/// Dense matrix over the rationals.  All arithmetic is exact.
class MatQ {
 public:
  MatQ() = default;
  MatQ(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static MatQ identity(std::size_t n) {
    MatQ m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  friend bool operator==(const MatQ& x, const MatQ& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }
  friend bool operator!=(const MatQ& x, const MatQ& y) { return !(x == y); }

  friend MatQ operator*(const MatQ& x, const MatQ& y) {
    if (x.cols_ != y.rows_) throw DimensionMismatch("matrix product shape");
    MatQ z(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const Rational& xik = x(i, k);
        if (xik == 0) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) {
          if (y(k, j) == 0) continue;
          z(i, j) += xik * y(k, j);
        }
      }
    return z;
  }

  friend MatQ operator+(const MatQ& x, const MatQ& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw DimensionMismatch("matrix sum shape");
    MatQ z = x;
    for (std::size_t i = 0; i < z.a_.size(); ++i) z.a_[i] += y.a_[i];
    return z;
  }

  friend MatQ operator-(const MatQ& x, const MatQ& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw DimensionMismatch("matrix diff shape");
    MatQ z = x;
    for (std::size_t i = 0; i < z.a_.size(); ++i) z.a_[i] -= y.a_[i];
    return z;
  }

  MatQ transpose() const {
    MatQ t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  MatQ block(std::size_t i0, std::size_t j0, std::size_t r, std::size_t c) const {
    MatQ b(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
    return b;
  }

  void set_block(std::size_t i0, std::size_t j0, const MatQ& b) {
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) (*this)(i0 + i, j0 + j) = b(i, j);
  }

  bool is_zero() const {
    for (const auto& q : a_)
      if (q != 0) return false;
    return true;
  }

  bool is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
  }

  /// In-place row reduction to reduced row echelon form; returns pivot columns.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t p = r;
      while (p < rows_ && (*this)(p, c) == 0) ++p;
      if (p == rows_) continue;
      if (p != r)
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(p, j), (*this)(r, j));
      Rational inv = 1 / (*this)(r, c);
      for (std::size_t j = c; j < cols_; ++j) (*this)(r, j) *= inv;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || (*this)(i, c) == 0) continue;
        Rational f = (*this)(i, c);
        for (std::size_t j = c; j < cols_; ++j) (*this)(i, j) -= f * (*this)(r, j);
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  std::size_t rank() const {
    MatQ m = *this;
    return m.rref().size();
  }

  /// Basis of the right kernel, one column per basis vector.
  MatQ kernel() const {
    MatQ m = *this;
    std::vector<std::size_t> pivots = m.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::size_t k = cols_ - pivots.size();
    MatQ ker(cols_, k);
    std::size_t col = 0;
    for (std::size_t free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      ker(free, col) = 1;
      for (std::size_t r = 0; r < pivots.size(); ++r) ker(pivots[r], col) = -m(r, free);
      ++col;
    }
    return ker;
  }

  /// Solves (*this) * X = rhs exactly; nullopt when inconsistent.
  std::optional<MatQ> solve(const MatQ& rhs) const {
    if (rhs.rows() != rows_) throw DimensionMismatch("solve shape");
    MatQ aug(rows_, cols_ + rhs.cols());
    aug.set_block(0, 0, *this);
    aug.set_block(0, cols_, rhs);
    std::vector<std::size_t> pivots = aug.rref();
    for (std::size_t c : pivots)
      if (c >= cols_) return std::nullopt;
    MatQ x(cols_, rhs.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r)
      for (std::size_t j = 0; j < rhs.cols(); ++j) x(pivots[r], j) = aug(r, cols_ + j);
    return x;
  }

  std::optional<MatQ> inverse() const {
    if (rows_ != cols_) throw DimensionMismatch("inverse of non-square matrix");
    return solve(identity(rows_));
  }

  Rational det() const {
    if (rows_ != cols_) throw DimensionMismatch("det of non-square matrix");
    MatQ m = *this;
    Rational d = 1;
    for (std::size_t c = 0; c < cols_; ++c) {
      std::size_t p = c;
      while (p < rows_ && m(p, c) == 0) ++p;
      if (p == rows_) return Rational(0);
      if (p != c) {
        for (std::size_t j = 0; j < cols_; ++j) std::swap(m(p, j), m(c, j));
        d = -d;
      }
      d *= m(c, c);
      Rational inv = 1 / m(c, c);
      for (std::size_t i = c + 1; i < rows_; ++i) {
        if (m(i, c) == 0) continue;
        Rational f = m(i, c) * inv;
        for (std::size_t j = c; j < cols_; ++j) m(i, j) -= f * m(c, j);
      }
    }
    return d;
  }

  bool invertible() const { return rows_ == cols_ && det() != 0; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> a_;
};

}  // namespace stokeslab
