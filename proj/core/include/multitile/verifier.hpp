#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "multitile/enumerator.hpp"
#include "multitile/geometry2d.hpp"

namespace multitile {

// Exhaustive evaluation over the faces of the arrangement on the torus R^2/L0.
struct ExactTorus2D {
  friend bool operator==(const ExactTorus2D&, const ExactTorus2D&) = default;
};

// Seeded uniform samples. Without a region the samples are drawn from the
// fundamental domain of the common period, or from the polytope's bounding
// box when there is none.
struct Sampled {
  std::uint64_t count = 10000;
  std::uint64_t seed = 0;
  std::optional<std::pair<Vec, Vec>> region;
  friend bool operator==(const Sampled&, const Sampled&) = default;
};

using VerificationMode = std::variant<ExactTorus2D, Sampled>;

struct TilingCertificate {
  std::int64_t multiplicity = 0;
  // True only for exhaustive exact evaluation.
  bool certified = false;
  VerificationMode mode;
  std::size_t vertices_checked = 0;
  std::size_t edges_checked = 0;
  std::size_t cells_checked = 0;
  std::size_t samples_checked = 0;
  std::optional<Lattice> period;
};

struct Discrepancy {
  // First point whose value differs from the first value seen.
  Vec witness;
  // Distinct observed values, ascending, with one point realising each.
  std::vector<std::int64_t> observed;
  std::vector<Vec> realizers;
  VerificationMode mode;
};

using VerificationResult = std::variant<TilingCertificate, Discrepancy>;

// Whether ExactTorus2D can run: d = 2, a common period exists, and every
// scalar lies in one quadratic field.
bool exact_mode_available(const HalfOpenPolytope& p, const QuasiPeriodicSet& q);

// Constancy of the half-open enumerator at every vertex, edge and cell.
VerificationResult verify_constant_multiplicity(const HalfOpenPolytope& p,
                                                const QuasiPeriodicSet& q,
                                                const VerificationMode& mode);

// Constancy of the closed enumerator at points in general position only.
VerificationResult verify_generic_multiplicity(const HalfOpenPolytope& p,
                                               const QuasiPeriodicSet& q,
                                               const VerificationMode& mode);

// Exact-mode face representatives of the arrangement of all coset edges, in
// ambient coordinates.
struct AmbientFaces {
  Lattice period;
  std::vector<Vec> vertices;
  std::vector<Vec> edge_points;
  std::vector<Vec> cell_points;
  std::size_t segments = 0;
};
AmbientFaces arrangement_faces(const Polytope& p, const QuasiPeriodicSet& q);

// Deterministic uniform points k / 2^64 in the unit cube mapped through
// `basis`, or scaled into the box [lo, hi].
std::vector<Vec> sample_fundamental_domain(const Lattice& lattice, std::uint64_t count,
                                           std::uint64_t seed);
std::vector<Vec> sample_box(const Vec& lo, const Vec& hi, std::uint64_t count,
                            std::uint64_t seed);

struct Connected {};
struct Disconnected {
  // Maximal segments of the separating set inside the fundamental domain.
  std::vector<Segment2> witness;
  std::string description;
};
struct Inconclusive {
  std::string reason;
};
using ConnectivityVerdict = std::variant<Connected, Disconnected, Inconclusive>;

// Path-connectivity of the complement of (dP + Q[first]) ∩ (dP + Q[second]).
ConnectivityVerdict group_connectivity(const Polytope& p, const QuasiPeriodicSet& q,
                                       const std::vector<std::size_t>& first,
                                       const std::vector<std::size_t>& second);

// The general-position condition for coset `i` (0-based): connectivity of
// the complement of H_i.
ConnectivityVerdict general_position_check(const Polytope& p, const QuasiPeriodicSet& q,
                                           std::size_t i);

struct PipelineOutcome {
  std::optional<std::int64_t> multiplicity;
  ConnectivityVerdict connectivity;
  std::optional<VerificationResult> verification;
  std::string reason;
};

// Connectivity of the complement of H_i, then constancy of coset i alone.
PipelineOutcome theorem_1_1_pipeline(const HalfOpenPolytope& p, const QuasiPeriodicSet& q,
                                     std::size_t i, const VerificationMode& mode);

// Connectivity for the split S1 | S2, then constancy of Q[S1].
PipelineOutcome split_check(const HalfOpenPolytope& p, const QuasiPeriodicSet& q,
                            const std::vector<std::size_t>& first,
                            const std::vector<std::size_t>& second,
                            const VerificationMode& mode);

// ExactTorus2D when available, otherwise the given sampled configuration.
VerificationMode preferred_mode(const HalfOpenPolytope& p, const QuasiPeriodicSet& q,
                                const Sampled& fallback);

}  // namespace multitile
