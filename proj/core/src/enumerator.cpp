#include "multitile/enumerator.hpp"

namespace multitile {

namespace {

// Facet values <n_i, x> - c_i compared with zero, for x = v - λ.
template <class Accept>
std::int64_t count_coset(const Polytope& p, const Coset& coset, const Vec& v, Accept&& accept) {
  // λ ∈ v - P  ⇒  λ ∈ [v - hi, v - lo]
  Vec lo = v - p.box_hi();
  Vec hi = v - p.box_lo();
  std::int64_t count = 0;
  for_each_candidate(coset, lo, hi, [&](const Vec& lambda) {
    if (accept(v - lambda)) count += coset.weight;
  });
  return count;
}

template <class Accept>
std::int64_t count_all(const EnumeratorContext& ctx, const Vec& v, Accept&& accept) {
  if (v.size() != ctx.dimension()) throw InvalidInput("point dimension mismatch");
  const Polytope& p = ctx.polytope().base();
  if (const auto* q = std::get_if<QuasiPeriodicSet>(&ctx.translations())) {
    std::int64_t total = 0;
    for (const Coset& c : q->cosets) total += count_coset(p, c, v, accept);
    return total;
  }
  const auto& window = std::get<WindowMultiset>(ctx.translations());
  std::int64_t total = 0;
  for (const WindowPoint& w : window.points) {
    if (accept(v - w.point)) total += w.multiplicity;
  }
  return total;
}

}  // namespace

EnumeratorContext::EnumeratorContext(HalfOpenPolytope polytope, Translations translations)
    : polytope_(std::move(polytope)), translations_(std::move(translations)) {
  const std::size_t d = polytope_.base().dimension();
  if (const auto* q = std::get_if<QuasiPeriodicSet>(&translations_)) {
    q->validate();
    if (q->dimension() != d) throw InvalidInput("translations and polytope dimensions differ");
  } else {
    const auto& w = std::get<WindowMultiset>(translations_);
    w.validate();
    if (!w.points.empty() && w.points.front().point.size() != d) {
      throw InvalidInput("translations and polytope dimensions differ");
    }
  }
}

std::int64_t L_half_open(const EnumeratorContext& ctx, const Vec& v) {
  const HalfOpenPolytope& p = ctx.polytope();
  return count_all(ctx, v, [&](const Vec& x) { return p.contains(x); });
}

std::int64_t L_closed(const EnumeratorContext& ctx, const Vec& v) {
  const Polytope& p = ctx.polytope().base();
  return count_all(ctx, v, [&](const Vec& x) { return p.contains_closed(x); });
}

std::vector<std::int64_t> L_half_open_per_coset(const HalfOpenPolytope& p,
                                                const QuasiPeriodicSet& q, const Vec& v) {
  std::vector<std::int64_t> out;
  out.reserve(q.cosets.size());
  for (const Coset& c : q.cosets) {
    out.push_back(count_coset(p.base(), c, v, [&](const Vec& x) { return p.contains(x); }));
  }
  return out;
}

std::int64_t coverage_count(const HalfOpenPolytope& p, Membership mode,
                            const WindowMultiset& window, const Vec& v) {
  const auto& facets = p.base().facets();
  const auto& signs = p.probe_signs();
  std::int64_t total = 0;
  for (const WindowPoint& w : window.points) {
    // v ∈ P + λ  ⇔  <n_i, v> <= c_i + <n_i, λ> for every facet
    bool inside = true;
    for (std::size_t i = 0; i < facets.size() && inside; ++i) {
      Scalar shifted = facets[i].offset + dot(facets[i].normal, w.point);
      int s = compare(dot(facets[i].normal, v), shifted);
      if (s > 0) inside = false;
      if (s == 0 && mode == Membership::HalfOpen && signs[i] > 0) inside = false;
    }
    if (inside) total += w.multiplicity;
  }
  return total;
}

}  // namespace multitile
