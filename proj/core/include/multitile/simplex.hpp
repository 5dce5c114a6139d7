#pragma once

// Exact two-phase tableau simplex with Bland's rule. Works over any ordered
// field type with sign()/is_zero() overloads (Rational, field-mode Scalar).
// Bland's rule makes the pivot sequence, and therefore the returned vertex,
// a deterministic function of the input.

#include <cstddef>
#include <optional>
#include <vector>

#include "multitile/linalg.hpp"

namespace multitile {

enum class LpStatus { Optimal, Infeasible, Unbounded };

template <class T>
struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<T> x;
  T value{};
};

namespace detail {

template <class T>
class Tableau {
 public:
  // rows: constraints; columns: variables followed by the rhs.
  Tableau(std::size_t m, std::size_t n) : m_(m), n_(n), t_(m, n + 1), basis_(m) {}

  T& a(std::size_t r, std::size_t c) { return t_(r, c); }
  T& rhs(std::size_t r) { return t_(r, n_); }
  std::size_t& basic(std::size_t r) { return basis_[r]; }
  std::size_t rows() const { return m_; }
  std::size_t vars() const { return n_; }

  void pivot(std::size_t row, std::size_t col) {
    T inv = T(1) / t_(row, col);
    for (std::size_t c = 0; c <= n_; ++c) {
      if (!is_zero(t_(row, c))) t_(row, c) *= inv;
    }
    for (std::size_t r = 0; r < m_; ++r) {
      if (r == row || is_zero(t_(r, col))) continue;
      T factor = t_(r, col);
      for (std::size_t c = 0; c <= n_; ++c) {
        if (!is_zero(t_(row, c))) t_(r, c) -= factor * t_(row, c);
      }
    }
    basis_[row] = col;
  }

  // Maximises cost·x over the current basic feasible solution, restricted to
  // columns where allowed[c] is true. Returns false if unbounded.
  bool optimize(const std::vector<T>& cost, const std::vector<bool>& allowed) {
    for (;;) {
      // Reduced cost of column c: cost[c] - sum_r cost[basis r] * a(r, c).
      std::optional<std::size_t> entering;
      for (std::size_t c = 0; c < n_ && !entering; ++c) {
        if (!allowed[c] || is_basic(c)) continue;
        T reduced = cost[c];
        for (std::size_t r = 0; r < m_; ++r) {
          if (!is_zero(t_(r, c)) && !is_zero(cost[basis_[r]])) reduced -= cost[basis_[r]] * t_(r, c);
        }
        if (sign(reduced) > 0) entering = c;
      }
      if (!entering) return true;
      const std::size_t col = *entering;
      std::optional<std::size_t> leaving;
      T best_ratio{};
      for (std::size_t r = 0; r < m_; ++r) {
        if (sign(t_(r, col)) <= 0) continue;
        T ratio = t_(r, n_) / t_(r, col);
        if (!leaving) {
          leaving = r;
          best_ratio = ratio;
          continue;
        }
        int c = sign(ratio - best_ratio);
        if (c < 0 || (c == 0 && basis_[r] < basis_[*leaving])) {
          leaving = r;
          best_ratio = ratio;
        }
      }
      if (!leaving) return false;
      pivot(*leaving, col);
    }
  }

  bool is_basic(std::size_t c) const {
    for (std::size_t b : basis_) {
      if (b == c) return true;
    }
    return false;
  }

  T objective(const std::vector<T>& cost) const {
    T v{};
    for (std::size_t r = 0; r < m_; ++r) {
      if (!is_zero(cost[basis_[r]])) v += cost[basis_[r]] * t_(r, n_);
    }
    return v;
  }

  std::vector<T> solution(std::size_t count) const {
    std::vector<T> x(count);
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < count) x[basis_[r]] = t_(r, n_);
    }
    return x;
  }

  void drop_row(std::size_t row) {
    Matrix<T> next(m_ - 1, n_ + 1);
    std::vector<std::size_t> basis;
    for (std::size_t r = 0, k = 0; r < m_; ++r) {
      if (r == row) continue;
      for (std::size_t c = 0; c <= n_; ++c) next(k, c) = t_(r, c);
      basis.push_back(basis_[r]);
      ++k;
    }
    t_ = std::move(next);
    basis_ = std::move(basis);
    --m_;
  }

 private:
  std::size_t m_;
  std::size_t n_;
  Matrix<T> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

// maximize c·x  subject to  A x = b,  x >= 0.
template <class T>
LpResult<T> simplex_standard(const Matrix<T>& a, const std::vector<T>& b,
                             const std::vector<T>& c) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m || c.size() != n) throw InvalidInput("bad LP shape");

  // Phase 1: one artificial per row, columns n .. n+m-1.
  detail::Tableau<T> tab(m, n + m);
  for (std::size_t r = 0; r < m; ++r) {
    bool flip = sign(b[r]) < 0;
    for (std::size_t col = 0; col < n; ++col) tab.a(r, col) = flip ? T(-a(r, col)) : a(r, col);
    tab.a(r, n + r) = T(1);
    tab.rhs(r) = flip ? T(-b[r]) : b[r];
    tab.basic(r) = n + r;
  }
  std::vector<T> phase1(n + m);
  for (std::size_t r = 0; r < m; ++r) phase1[n + r] = T(-1);
  std::vector<bool> all(n + m, true);
  tab.optimize(phase1, all);
  if (sign(tab.objective(phase1)) < 0) return {LpStatus::Infeasible, {}, {}};

  // Drive artificials out of the basis; rows that cannot pivot are redundant.
  for (std::size_t r = 0; r < tab.rows();) {
    if (tab.basic(r) < n) {
      ++r;
      continue;
    }
    std::optional<std::size_t> col;
    for (std::size_t k = 0; k < n && !col; ++k) {
      if (!is_zero(tab.a(r, k)) && !tab.is_basic(k)) col = k;
    }
    if (col) {
      tab.pivot(r, *col);
      ++r;
    } else {
      tab.drop_row(r);
    }
  }

  // Phase 2 over the original columns only.
  std::vector<T> cost(n + m);
  for (std::size_t k = 0; k < n; ++k) cost[k] = c[k];
  std::vector<bool> originals(n + m, false);
  for (std::size_t k = 0; k < n; ++k) originals[k] = true;
  if (!tab.optimize(cost, originals)) return {LpStatus::Unbounded, {}, {}};
  LpResult<T> result;
  result.status = LpStatus::Optimal;
  result.x = tab.solution(n);
  result.value = tab.objective(cost);
  return result;
}

// maximize c·x  subject to  A x <= b  with x free.
template <class T>
LpResult<T> maximize_free(const Matrix<T>& a, const std::vector<T>& b, const std::vector<T>& c) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  // x = xp - xn, slack s: [A, -A, I] (xp, xn, s) = b
  Matrix<T> std_a(m, 2 * n + m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      std_a(r, k) = a(r, k);
      std_a(r, n + k) = T(-a(r, k));
    }
    std_a(r, 2 * n + r) = T(1);
  }
  std::vector<T> cost(2 * n + m);
  for (std::size_t k = 0; k < n; ++k) {
    cost[k] = c[k];
    cost[n + k] = T(-c[k]);
  }
  auto res = simplex_standard(std_a, b, cost);
  if (res.status != LpStatus::Optimal) return {res.status, {}, {}};
  LpResult<T> out;
  out.status = LpStatus::Optimal;
  out.value = res.value;
  out.x.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.x[k] = res.x[k] - res.x[n + k];
  return out;
}

}  // namespace multitile
