#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "multitile/linalg.hpp"
#include "multitile/polytope.hpp"

namespace multitile {

/**
 * A full-rank lattice given by a d x d basis matrix whose columns are the
 * basis vectors. The inverse is computed once at construction, so bases must
 * be rational or lie in a single quadratic field.
 */
class Lattice {
 public:
  explicit Lattice(Matrix<Scalar> basis);
  static Lattice from_columns(const std::vector<Vec>& columns);
  static Lattice integer(std::size_t d);
  static Lattice from_rational(const Matrix<Rational>& basis);

  std::size_t dimension() const { return data_->basis.rows(); }
  const Matrix<Scalar>& basis() const { return data_->basis; }
  const Matrix<Scalar>& inverse() const { return data_->inverse; }
  Vec column(std::size_t j) const { return data_->basis.column(j); }
  bool is_rational() const { return data_->rational; }

  Vec coords(const Vec& v) const;
  Vec point(const std::vector<Integer>& coords) const;
  bool contains(const Vec& v) const;

  // Column HNF of a rational basis; identical for equal lattices.
  Matrix<Rational> canonical_basis() const;
  Matrix<Rational> rational_basis() const;

  // Same point set (B1^-1 B2 is integral and unimodular).
  bool same_as(const Lattice& other) const;

  // Basis divided by n.
  Lattice refined(const Integer& n) const;

  // Exact basis equality.
  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.data_ == b.data_ || a.basis() == b.basis();
  }

 private:
  struct Data {
    Matrix<Scalar> basis;
    Matrix<Scalar> inverse;
    bool rational = true;
  };
  std::shared_ptr<const Data> data_;
};

// Exact solution c of basis * c = v.
Vec lattice_coords(const Lattice& lattice, const Vec& v);
Lattice refine_lattice(const Lattice& lattice, const Integer& n);

// A translated lattice whose points all carry the same multiplicity.
struct Coset {
  Lattice lattice;
  Vec translation;
  std::int64_t weight = 1;

  std::size_t dimension() const { return lattice.dimension(); }
  bool contains(const Vec& v) const { return lattice.contains(v - translation); }
  friend bool operator==(const Coset&, const Coset&) = default;
};

// A weighted finite union of lattice cosets.
struct QuasiPeriodicSet {
  std::vector<Coset> cosets;

  std::size_t dimension() const;
  void validate() const;
  QuasiPeriodicSet subset(const std::vector<std::size_t>& indices) const;
  friend bool operator==(const QuasiPeriodicSet&, const QuasiPeriodicSet&) = default;
};

struct WindowPoint {
  Vec point;
  std::int64_t multiplicity = 1;
  friend bool operator==(const WindowPoint&, const WindowPoint&) = default;
};

// A finite multiset of translation vectors.
struct WindowMultiset {
  std::vector<WindowPoint> points;

  std::int64_t total() const;
  void validate() const;
  friend bool operator==(const WindowMultiset&, const WindowMultiset&) = default;
};

// Inclusive integer ranges of lattice coordinates of the coset points that
// can lie in the box [lo, hi]. Empty if some lower end exceeds its upper end.
struct CoordinateBox {
  std::vector<Integer> lo;
  std::vector<Integer> hi;

  bool empty() const;
  // Number of integer vectors in the box (0 when empty).
  Integer volume() const;
};
CoordinateBox coordinate_box(const Coset& coset, const Vec& lo, const Vec& hi);

// Calls f(point) for every coset point whose lattice coordinates fall in the
// coordinate box of [lo, hi], in lexicographic coordinate order. Callers
// filter by exact membership.
template <class F>
void for_each_candidate(const Coset& coset, const Vec& lo, const Vec& hi, F&& f) {
  CoordinateBox box = coordinate_box(coset, lo, hi);
  if (box.empty()) return;
  const std::size_t d = coset.dimension();
  std::vector<Integer> c = box.lo;
  for (;;) {
    Vec p = coset.translation + coset.lattice.point(c);
    f(p);
    std::size_t k = d;
    while (k > 0 && c[k - 1] == box.hi[k - 1]) {
      c[k - 1] = box.lo[k - 1];
      --k;
    }
    if (k == 0) return;
    ++c[k - 1];
  }
}

// Coset points inside the closed box [lo, hi].
WindowMultiset enumerate_in_box(const Coset& coset, const Vec& lo, const Vec& hi);
// Coset points inside closure(P).
WindowMultiset enumerate_in_polytope(const Coset& coset, const Polytope& p);
// Coset points inside the half-open counterpart P^h.
WindowMultiset enumerate_in_polytope(const Coset& coset, const HalfOpenPolytope& p);

// A lattice L0 with Q + L0 = Q, or nullopt when none is found.
std::optional<Lattice> common_period(const QuasiPeriodicSet& q);

// Half-open parallelepiped basis * [0,1)^d.
HalfOpenPolytope fundamental_domain(const Lattice& lattice);

}  // namespace multitile
