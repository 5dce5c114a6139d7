#pragma once

// Two cosets of one lattice: refinement to a single lattice that tiles, and
// the search for odd multiples of an irrational vector near the integers.

#include <cstdint>
#include <optional>
#include <vector>

#include "multitile/verifier.hpp"

namespace multitile {

// Lattice coordinates of t2 - t1, each stored as a rational constant plus
// rational coefficients over the declared generators.
struct OffsetDecomposition {
  Vec coordinates;
  // Generators with a nonzero coefficient somewhere, in canonical order.
  std::vector<Generator> generators;

  std::size_t irrational_rank() const { return generators.size(); }
};

OffsetDecomposition decompose_offset(const Lattice& period, const Vec& t1, const Vec& t2);

// lcm of the denominators of every rational constant and coefficient.
Integer denominator_lcm(const OffsetDecomposition& decomposition);

struct RefinementResult {
  Integer n;
  OffsetDecomposition decomposition;
  Coset candidate;
  VerificationResult verification;
};

// Builds t1 + (1/N) L0 and verifies it directly: exactly when possible and
// allowed, otherwise with `sampled`. When N = 1 the two cosets coincide and
// the candidate carries the combined weight.
RefinementResult theorem_1_4_pipeline(const HalfOpenPolytope& p, const Lattice& period,
                                      const Vec& t1, const Vec& t2, std::int64_t w1,
                                      std::int64_t w2, const Sampled& sampled,
                                      bool exact_if_available = true);

// Max-norm distance of x to the nearest integer vector is below eps.
bool near_integer_vector(const Vec& x, const Rational& eps);

// Smallest j in [0, jmax] with (2j+1) a within eps of Z^k (max-norm).
std::optional<std::int64_t> weyl_search(const Vec& a, const Rational& eps, std::int64_t jmax);

// |(1/M) sum_{n=1}^{M} exp(2 pi i <h, 2n a>)|, a floating-point diagnostic.
double equidistribution_statistic(const Vec& a, const std::vector<std::int64_t>& frequency,
                                  std::int64_t terms);

}  // namespace multitile
