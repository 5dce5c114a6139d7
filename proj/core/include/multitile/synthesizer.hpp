#pragma once

// Nonnegative integer weights for a family of cosets a_i + L of one lattice,
// such that the weighted union tiles with constant multiplicity.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "multitile/hnf.hpp"
#include "multitile/verifier.hpp"

namespace multitile {

struct CosetFamily {
  Lattice lattice;
  std::vector<Vec> offsets;

  std::size_t size() const { return offsets.size(); }
  // n >= 1, matching dimensions, offsets distinct modulo the lattice.
  void validate() const;
  QuasiPeriodicSet as_quasi_periodic(const std::vector<std::int64_t>& weights) const;
  friend bool operator==(const CosetFamily&, const CosetFamily&) = default;
};

struct DifferenceCollection {
  // Points at which the value vectors were taken.
  std::vector<Vec> points;
  // Distinct value vectors (L^h(v - a_1), ..., L^h(v - a_n)) in order of
  // first appearance.
  std::vector<std::vector<std::int64_t>> value_vectors;
  std::vector<std::vector<Integer>> differences;
  bool exact = false;
};

// Value vector of the family at v.
std::vector<std::int64_t> value_vector(const HalfOpenPolytope& p, const CosetFamily& family,
                                       const Vec& v);

DifferenceCollection collect_difference_vectors(const HalfOpenPolytope& p,
                                                const CosetFamily& family,
                                                const VerificationMode& mode);

// Row echelon form by fraction-free (Bareiss) elimination, in place. Returns
// the pivot columns.
std::vector<std::size_t> bareiss_echelon(IntMatrix& m);

// Basis of the orthogonal complement of span(vectors) in Q^n, in reduced row
// echelon form.
std::vector<std::vector<Rational>> rational_orthogonal_complement(
    const std::vector<std::vector<Integer>>& vectors, std::size_t n);

// A primitive nonnegative nonzero integer vector in span(basis), chosen by
// Bland's-rule simplex, or nullopt if the span meets the orthant only at 0.
std::optional<std::vector<Integer>> find_nonnegative_integer_vector(
    const std::vector<std::vector<Rational>>& basis, std::size_t n);

struct WeightSolution {
  std::vector<Integer> weights;
  std::int64_t multiplicity = 0;
  std::size_t points_verified = 0;
  bool exact = false;
  DifferenceCollection collection;
  std::vector<std::vector<Rational>> complement;
};

struct SynthesisFailure {
  std::string stage;
  std::string reason;
  DifferenceCollection collection;
};

using SynthesisResult = std::variant<WeightSolution, SynthesisFailure>;

struct SynthesisOptions {
  // Fresh samples for the final check in sampled mode.
  std::uint64_t verification_samples = 256;
};

SynthesisResult synthesize(const HalfOpenPolytope& p, const CosetFamily& family,
                           const VerificationMode& mode, const SynthesisOptions& options = {});

}  // namespace multitile
