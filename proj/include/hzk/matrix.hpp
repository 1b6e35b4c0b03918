#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "hzk/rational.hpp"

namespace hzk {

// Dense row-major matrix over the exact rationals. Everything here is
// exact; all instances in this kernel are small, so no sparsity layer.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static Matrix identity(int n);
  static Matrix zero(int rows, int cols) { return Matrix(rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Rational& at(int i, int j) const {
    return a_[static_cast<size_t>(i) * cols_ + j];
  }

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const Rational& c) const;
  Matrix transposed() const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  bool is_zero() const;
  bool is_identity() const;

  std::vector<Rational> apply(const std::vector<Rational>& x) const;

  Matrix kronecker(const Matrix& o) const;

  // Row-reduce in place to reduced row echelon form; returns pivot columns.
  std::vector<int> rref();

  int rank() const;
  Matrix inverse() const;  // throws std::domain_error when singular

  // Basis of the right nullspace, one column per basis vector.
  Matrix nullspace() const;

  Matrix select_rows(const std::vector<int>& idx) const;
  Matrix select_cols(const std::vector<int>& idx) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> a_;
};

// Exact factorization of an idempotent e = incl * proj with
// proj * incl = identity. Throws if e is not square or e*e != e.
struct IdempotentSplit {
  Matrix proj;  // r x n
  Matrix incl;  // n x r
};
IdempotentSplit split_idempotent(const Matrix& e);

}  // namespace hzk
