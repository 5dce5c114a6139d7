#pragma once

// Integer Hermite normal form and the lattice operations built on it.

#include <optional>
#include <vector>

#include "multitile/linalg.hpp"

namespace multitile {

using IntMatrix = Matrix<Integer>;

// Column-style Hermite normal form of the lattice generated by the columns of
// `generators`: returns the nonzero columns H (lower echelon, positive
// pivots, entries left of each pivot reduced into [0, pivot)).
IntMatrix column_hnf(IntMatrix generators);

// Rational matrix scaled by the lcm of its denominators.
struct ScaledIntMatrix {
  IntMatrix numerators;
  Integer denominator;
};
ScaledIntMatrix clear_denominators(const Matrix<Rational>& m);

// Canonical basis of the lattice spanned by the columns of a rational matrix.
Matrix<Rational> rational_hnf(const Matrix<Rational>& generators);

// Basis of L1 ∩ ... ∩ Ln for full-rank rational bases, via the sum of duals.
Matrix<Rational> intersect_rational_lattices(const std::vector<Matrix<Rational>>& bases);

// Whether the integer vectors span Z^d as a group.
bool generates_integer_lattice(const std::vector<std::vector<Integer>>& vectors, std::size_t d);

}  // namespace multitile
