#pragma once

// Problem files and reports as JSON.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "multitile/refiner.hpp"
#include "multitile/synthesizer.hpp"
#include "multitile/verifier.hpp"

namespace multitile {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct SplitSpec {
  // 0-based coset indices (1-based in files).
  std::vector<std::size_t> first;
  std::vector<std::size_t> second;
  friend bool operator==(const SplitSpec&, const SplitSpec&) = default;
};

struct RefinementSpec {
  Lattice lattice;
  Vec t1;
  Vec t2;
  std::int64_t w1 = 1;
  std::int64_t w2 = 1;
  friend bool operator==(const RefinementSpec&, const RefinementSpec&) = default;
};

struct WeylSpec {
  Vec a;
  Rational eps{1, 20};
  std::int64_t jmax = 1000;
  std::optional<std::vector<std::int64_t>> frequency;
  std::int64_t terms = 10000;
  friend bool operator==(const WeylSpec&, const WeylSpec&) = default;
};

struct BoxSpec {
  Vec lo;
  Vec hi;
  friend bool operator==(const BoxSpec&, const BoxSpec&) = default;
};

struct SamplingSpec {
  std::optional<BoxSpec> region;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  friend bool operator==(const SamplingSpec&, const SamplingSpec&) = default;
};

struct Problem {
  GeneratorTable generators;
  std::optional<Polytope> polytope;
  std::optional<ProbeDirection> probe;
  std::optional<Translations> translations;
  std::optional<CosetFamily> family;
  std::optional<SplitSpec> split;
  std::optional<RefinementSpec> refinement;
  std::optional<WeylSpec> weyl;
  std::optional<BoxSpec> render;
  std::optional<SamplingSpec> sampling;

  // The polytope with the given probe, or the derived one.
  HalfOpenPolytope half_open() const;
  const QuasiPeriodicSet& quasi_periodic() const;

  friend bool operator==(const Problem& a, const Problem& b);
};

Problem parse_problem(const Json& j);
Problem load_problem(const std::string& path);
Json to_json(const Problem& p);

Json scalar_to_json(const Scalar& x);
Scalar scalar_from_json(const Json& j, const GeneratorTable& table);
Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j, const GeneratorTable& table);
Json lattice_to_json(const Lattice& l);
Json polytope_to_json(const Polytope& p);
Json coset_to_json(const Coset& c);
Json segment_to_json(const Segment2& s);

// Reports. Every report carries "schema_version" and "kind".
Json report_header(const std::string& kind);
Json verification_to_json(const VerificationResult& r);
Json verdict_to_json(const ConnectivityVerdict& v);
Json pipeline_to_json(const PipelineOutcome& o);
Json synthesis_to_json(const SynthesisResult& r);
Json refinement_to_json(const RefinementResult& r);
Json mode_to_json(const VerificationMode& m);

}  // namespace multitile
