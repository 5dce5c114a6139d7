#pragma once

#include <cstdint>
#include <variant>

#include "multitile/lattice.hpp"
#include "multitile/polytope.hpp"

namespace multitile {

using Translations = std::variant<QuasiPeriodicSet, WindowMultiset>;

/**
 * The data behind the enumerator functions: a polytope with its probe
 * direction and the multiset of translation vectors.
 *
 *   L(v)   = #(Λ ∩ (v - P))      counted with multiplicity
 *   L^h(v) = #(Λ ∩ (v - P^h))
 *
 * The reflected polytope is never built; membership is tested as v - λ ∈ P.
 */
class EnumeratorContext {
 public:
  EnumeratorContext(HalfOpenPolytope polytope, Translations translations);

  const HalfOpenPolytope& polytope() const { return polytope_; }
  const Translations& translations() const { return translations_; }
  std::size_t dimension() const { return polytope_.base().dimension(); }

 private:
  HalfOpenPolytope polytope_;
  Translations translations_;
};

std::int64_t L_half_open(const EnumeratorContext& ctx, const Vec& v);
std::int64_t L_closed(const EnumeratorContext& ctx, const Vec& v);

// Per-coset values of L^h at v for a quasi-periodic set.
std::vector<std::int64_t> L_half_open_per_coset(const HalfOpenPolytope& p,
                                                const QuasiPeriodicSet& q, const Vec& v);

enum class Membership { Closed, HalfOpen };

// Direct indicator sum  sum_λ 1_{P + λ}(v)  over a finite window, testing v
// against each translated polytope.
std::int64_t coverage_count(const HalfOpenPolytope& p, Membership mode,
                            const WindowMultiset& window, const Vec& v);

}  // namespace multitile
