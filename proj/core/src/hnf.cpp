#include "multitile/hnf.hpp"

#include <utility>

namespace multitile {

namespace {

void swap_columns(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
}

}  // namespace

IntMatrix column_hnf(IntMatrix a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::size_t k = 0;
  for (std::size_t i = 0; i < rows && k < cols; ++i) {
    for (std::size_t j = k + 1; j < cols; ++j) {
      if (a(i, j) == 0) continue;
      if (a(i, k) == 0) {
        swap_columns(a, k, j);
        continue;
      }
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a(i, k).get_mpz_t(),
                 a(i, j).get_mpz_t());
      Integer ak = a(i, k) / g;
      Integer aj = a(i, j) / g;
      for (std::size_t r = 0; r < rows; ++r) {
        Integer x = a(r, k);
        Integer y = a(r, j);
        a(r, k) = s * x + t * y;
        a(r, j) = ak * y - aj * x;
      }
    }
    if (a(i, k) == 0) continue;
    if (a(i, k) < 0) {
      for (std::size_t r = 0; r < rows; ++r) a(r, k) = -a(r, k);
    }
    for (std::size_t l = 0; l < k; ++l) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a(i, l).get_mpz_t(), a(i, k).get_mpz_t());
      if (q == 0) continue;
      for (std::size_t r = 0; r < rows; ++r) a(r, l) -= q * a(r, k);
    }
    ++k;
  }
  IntMatrix h(rows, k);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < k; ++c) h(r, c) = a(r, c);
  return h;
}

ScaledIntMatrix clear_denominators(const Matrix<Rational>& m) {
  Integer den = 1;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) den = lcm_of(den, m(r, c).get_den());
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out(r, c) = m(r, c).get_num() * (den / m(r, c).get_den());
    }
  return {std::move(out), den};
}

Matrix<Rational> rational_hnf(const Matrix<Rational>& generators) {
  auto scaled = clear_denominators(generators);
  IntMatrix h = column_hnf(scaled.numerators);
  Matrix<Rational> out(h.rows(), h.cols());
  for (std::size_t r = 0; r < h.rows(); ++r)
    for (std::size_t c = 0; c < h.cols(); ++c) {
      out(r, c) = Rational(h(r, c), scaled.denominator);
      out(r, c).canonicalize();
    }
  return out;
}

Matrix<Rational> intersect_rational_lattices(const std::vector<Matrix<Rational>>& bases) {
  if (bases.empty()) throw InvalidInput("intersection of no lattices");
  const std::size_t d = bases.front().rows();
  // (L1 ∩ L2)* = L1* + L2*, with L* spanned by the columns of B^{-T}.
  std::vector<std::vector<Rational>> dual_columns;
  for (const auto& b : bases) {
    if (b.rows() != d || b.cols() != d) throw InvalidInput("lattice bases of mixed dimension");
    auto inv = inverse(b);
    if (!inv) throw InvalidInput("singular lattice basis");
    Matrix<Rational> dual = inv->transposed();
    for (std::size_t c = 0; c < d; ++c) dual_columns.push_back(dual.column(c));
  }
  Matrix<Rational> dual_sum = rational_hnf(Matrix<Rational>::from_columns(dual_columns));
  if (dual_sum.cols() != d) throw InvalidInput("lattices are not full rank");
  auto inv = inverse(dual_sum);
  return rational_hnf(inv->transposed());
}

bool generates_integer_lattice(const std::vector<std::vector<Integer>>& vectors, std::size_t d) {
  if (vectors.empty()) return d == 0;
  IntMatrix m = IntMatrix::from_columns(vectors);
  IntMatrix h = column_hnf(m);
  if (h.cols() != d) return false;
  // Pivots of a full-rank square HNF sit on the diagonal.
  for (std::size_t i = 0; i < d; ++i) {
    if (h(i, i) != 1) return false;
  }
  return true;
}

}  // namespace multitile
