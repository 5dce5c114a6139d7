#pragma once

// Dense exact linear algebra over Rational or field-mode Scalar entries.
// Elimination only needs exact zero tests, so pivoting is first-nonzero.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "multitile/errors.hpp"
#include "multitile/scalar.hpp"

namespace multitile {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_columns(const std::vector<std::vector<T>>& columns) {
    if (columns.empty()) return {};
    Matrix m(columns.front().size(), columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (columns[c].size() != m.rows_) throw InvalidInput("ragged column list");
      for (std::size_t r = 0; r < m.rows_; ++r) m(r, c) = columns[c][r];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }
  std::vector<T> row(std::size_t r) const {
    return std::vector<T>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  std::vector<T> operator*(const std::vector<T>& v) const {
    if (v.size() != cols_) throw InvalidInput("dimension mismatch in matrix-vector product");
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      T acc{};
      for (std::size_t c = 0; c < cols_; ++c) {
        const T& a = (*this)(r, c);
        if (is_zero(a) || is_zero(v[c])) continue;
        acc += a * v[c];
      }
      out[r] = acc;
    }
    return out;
  }

  Matrix operator*(const Matrix& other) const {
    if (cols_ != other.rows_) throw InvalidInput("dimension mismatch in matrix product");
    Matrix out(rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(r, k);
        if (is_zero(a)) continue;
        for (std::size_t c = 0; c < other.cols_; ++c) {
          if (!is_zero(other(k, c))) out(r, c) += a * other(k, c);
        }
      }
    return out;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

// Reduced row echelon form in place; returns pivot columns in order.
template <class T>
std::vector<std::size_t> rref(Matrix<T>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && is_zero(m(p, col))) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, row);
    T inv = T(1) / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) {
      if (!is_zero(m(row, c))) m(row, c) *= inv;
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      T factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (!is_zero(m(row, c))) m(r, c) -= factor * m(row, c);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class T>
std::size_t rank(Matrix<T> m) {
  return rref(m).size();
}

template <class T>
T determinant(Matrix<T> m) {
  if (m.rows() != m.cols()) throw InvalidInput("determinant of a non-square matrix");
  T det(1);
  const std::size_t n = m.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && is_zero(m(p, col))) ++p;
    if (p == n) return T(0);
    if (p != col) {
      m.swap_rows(p, col);
      det = -det;
    }
    det *= m(col, col);
    T inv = T(1) / m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (is_zero(m(r, col))) continue;
      T factor = m(r, col) * inv;
      for (std::size_t c = col; c < n; ++c) {
        if (!is_zero(m(col, c))) m(r, c) -= factor * m(col, c);
      }
    }
  }
  return det;
}

// Inverse of a square matrix, or nullopt when singular.
template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& m) {
  if (m.rows() != m.cols()) throw InvalidInput("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix<T> aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = T(1);
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<T> inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  return inv;
}

// Unique solution of A x = b, or nullopt when A is singular.
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& a, const std::vector<T>& b) {
  if (a.rows() != a.cols() || b.size() != a.rows()) throw InvalidInput("bad linear system shape");
  const std::size_t n = a.rows();
  Matrix<T> aug(n, n + 1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n) = b[r];
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  std::vector<T> x(n);
  for (std::size_t r = 0; r < n; ++r) x[r] = aug(r, n);
  return x;
}

// Basis of {x : m x = 0}, one vector per free column, canonicalised to RREF.
template <class T>
std::vector<std::vector<T>> nullspace(Matrix<T> m) {
  const std::size_t n = m.cols();
  auto pivots = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<T> v(n);
    v[f] = T(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace multitile
