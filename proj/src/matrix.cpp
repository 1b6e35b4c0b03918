#include "hzk/matrix.hpp"

#include <stdexcept>

namespace hzk {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Rational(1);
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("Matrix: size mismatch in *");
  Matrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rational& aik = at(i, k);
      if (aik.is_zero()) continue;  // block-sparse inputs are the common case
      for (int j = 0; j < o.cols_; ++j) r.at(i, j).add_mul(aik, o.at(k, j));
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("Matrix: size mismatch in +");
  Matrix r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("Matrix: size mismatch in -");
  Matrix r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

Matrix Matrix::scaled(const Rational& c) const {
  Matrix r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * c;
  return r;
}

Matrix Matrix::transposed() const {
  Matrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (size_t i = 0; i < a_.size(); ++i)
    if (a_[i] != o.a_[i]) return false;
  return true;
}

bool Matrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  return *this == identity(rows_);
}

std::vector<Rational> Matrix::apply(const std::vector<Rational>& x) const {
  if (static_cast<int>(x.size()) != cols_)
    throw std::invalid_argument("Matrix: size mismatch in apply");
  std::vector<Rational> y(static_cast<size_t>(rows_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero()) y[i].add_mul(at(i, j), x[j]);
  return y;
}

Matrix Matrix::kronecker(const Matrix& o) const {
  Matrix r(rows_ * o.rows_, cols_ * o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      const Rational& c = at(i, j);
      if (c.is_zero()) continue;
      for (int p = 0; p < o.rows_; ++p)
        for (int q = 0; q < o.cols_; ++q)
          r.at(i * o.rows_ + p, j * o.cols_ + q) = c * o.at(p, q);
    }
  return r;
}

std::vector<int> Matrix::rref() {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < cols_ && row < rows_; ++col) {
    int piv = -1;
    for (int i = row; i < rows_; ++i)
      if (!at(i, col).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < cols_; ++j) std::swap(at(piv, j), at(row, j));
    Rational inv = at(row, col).inverse();
    for (int j = col; j < cols_; ++j) at(row, j) *= inv;
    for (int i = 0; i < rows_; ++i) {
      if (i == row || at(i, col).is_zero()) continue;
      Rational f = at(i, col);
      for (int j = col; j < cols_; ++j) at(i, j) -= f * at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int Matrix::rank() const {
  Matrix copy(*this);
  return static_cast<int>(copy.rref().size());
}

Matrix Matrix::inverse() const {
  if (rows_ != cols_) throw std::domain_error("Matrix: inverse of non-square");
  Matrix aug(rows_, 2 * cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_ + i) = Rational(1);
  }
  auto pivots = aug.rref();
  if (static_cast<int>(pivots.size()) != rows_ ||
      (rows_ > 0 && pivots.back() >= cols_))
    throw std::domain_error("Matrix: singular");
  Matrix r(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(i, j) = aug.at(i, cols_ + j);
  return r;
}

Matrix Matrix::nullspace() const {
  Matrix red(*this);
  auto pivots = red.rref();
  std::vector<bool> is_pivot(static_cast<size_t>(cols_), false);
  for (int p : pivots) is_pivot[static_cast<size_t>(p)] = true;
  std::vector<int> free_cols;
  for (int j = 0; j < cols_; ++j)
    if (!is_pivot[static_cast<size_t>(j)]) free_cols.push_back(j);
  Matrix basis(cols_, static_cast<int>(free_cols.size()));
  for (size_t k = 0; k < free_cols.size(); ++k) {
    int fc = free_cols[k];
    basis.at(fc, static_cast<int>(k)) = Rational(1);
    for (size_t r = 0; r < pivots.size(); ++r)
      basis.at(pivots[r], static_cast<int>(k)) = -red.at(static_cast<int>(r), fc);
  }
  return basis;
}

Matrix Matrix::select_rows(const std::vector<int>& idx) const {
  Matrix r(static_cast<int>(idx.size()), cols_);
  for (size_t i = 0; i < idx.size(); ++i)
    for (int j = 0; j < cols_; ++j) r.at(static_cast<int>(i), j) = at(idx[i], j);
  return r;
}

Matrix Matrix::select_cols(const std::vector<int>& idx) const {
  Matrix r(rows_, static_cast<int>(idx.size()));
  for (int i = 0; i < rows_; ++i)
    for (size_t j = 0; j < idx.size(); ++j) r.at(i, static_cast<int>(j)) = at(i, idx[j]);
  return r;
}

IdempotentSplit split_idempotent(const Matrix& e) {
  if (e.rows() != e.cols())
    throw std::invalid_argument("split_idempotent: matrix not square");
  if (e * e != e) throw std::invalid_argument("split_idempotent: not idempotent");
  Matrix red(e);
  std::vector<int> pivots = red.rref();
  int r = static_cast<int>(pivots.size());
  // Pivot columns of e span its column space; the nonzero rows of rref(e)
  // express every column of e in that basis. incl * proj = e follows from
  // the rref identity, and proj * incl = id because incl has full rank.
  IdempotentSplit s;
  s.incl = e.select_cols(pivots);
  s.proj = Matrix(r, e.cols());
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < e.cols(); ++j) s.proj.at(i, j) = red.at(i, j);
  return s;
}

}  // namespace hzk
