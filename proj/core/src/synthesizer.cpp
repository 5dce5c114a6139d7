#include "multitile/synthesizer.hpp"

#include <algorithm>
#include <numeric>

#include "multitile/simplex.hpp"

namespace multitile {

namespace {

constexpr std::size_t kBatchPairs = 64;
constexpr std::size_t kStableBatches = 5;

std::size_t rational_rank(const std::vector<std::vector<Integer>>& vectors, std::size_t n) {
  if (vectors.empty()) return 0;
  IntMatrix m(vectors.size(), n);
  for (std::size_t r = 0; r < vectors.size(); ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = vectors[r][c];
  return bareiss_echelon(m).size();
}

void add_value_vector(DifferenceCollection& out, std::vector<std::int64_t> values) {
  if (std::find(out.value_vectors.begin(), out.value_vectors.end(), values) ==
      out.value_vectors.end()) {
    out.value_vectors.push_back(std::move(values));
  }
}

std::vector<Integer> difference(const std::vector<std::int64_t>& a,
                                const std::vector<std::int64_t>& b) {
  std::vector<Integer> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = Integer(static_cast<long>(a[i] - b[i]));
  return d;
}

bool all_zero(const std::vector<Integer>& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

std::vector<Vec> sample_points(const CosetFamily& family, const Sampled& s, std::uint64_t count,
                               std::uint64_t seed) {
  if (s.region) return sample_box(s.region->first, s.region->second, count, seed);
  return sample_fundamental_domain(family.lattice, count, seed);
}

}  // namespace

void CosetFamily::validate() const {
  if (offsets.empty()) throw InvalidInput("a coset family needs at least one offset");
  for (const Vec& a : offsets) {
    if (a.size() != lattice.dimension()) throw InvalidInput("offset dimension mismatch");
  }
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    for (std::size_t j = i + 1; j < offsets.size(); ++j) {
      if (lattice.contains(offsets[j] - offsets[i])) {
        throw InvalidInput("offsets " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                           " agree modulo the lattice");
      }
    }
  }
}

QuasiPeriodicSet CosetFamily::as_quasi_periodic(const std::vector<std::int64_t>& weights) const {
  QuasiPeriodicSet q;
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    if (weights[i] > 0) q.cosets.push_back(Coset{lattice, offsets[i], weights[i]});
  }
  return q;
}

std::vector<std::int64_t> value_vector(const HalfOpenPolytope& p, const CosetFamily& family,
                                       const Vec& v) {
  std::vector<std::int64_t> out;
  out.reserve(family.size());
  for (const Vec& a : family.offsets) {
    QuasiPeriodicSet single{{Coset{family.lattice, a, 1}}};
    out.push_back(L_half_open_per_coset(p, single, v).front());
  }
  return out;
}

DifferenceCollection collect_difference_vectors(const HalfOpenPolytope& p,
                                                const CosetFamily& family,
                                                const VerificationMode& mode) {
  family.validate();
  const std::size_t n = family.size();
  DifferenceCollection out;
  QuasiPeriodicSet all = family.as_quasi_periodic(std::vector<std::int64_t>(n, 1));

  if (std::holds_alternative<ExactTorus2D>(mode)) {
    if (!exact_mode_available(p, all)) {
      throw ModeUnavailable("exact difference collection needs d = 2 and one quadratic field");
    }
    AmbientFaces faces = arrangement_faces(p.base(), all);
    out.exact = true;
    for (const auto* group : {&faces.cell_points, &faces.edge_points, &faces.vertices}) {
      for (const Vec& v : *group) {
        add_value_vector(out, value_vector(p, family, v));
        out.points.push_back(v);
      }
    }
    for (std::size_t i = 0; i < out.value_vectors.size(); ++i) {
      for (std::size_t j = i + 1; j < out.value_vectors.size(); ++j) {
        out.differences.push_back(difference(out.value_vectors[j], out.value_vectors[i]));
      }
    }
    return out;
  }

  const Sampled& s = std::get<Sampled>(mode);
  const std::uint64_t max_batches = std::max<std::uint64_t>(1, s.count / kBatchPairs);
  std::size_t rank = 0;
  std::size_t stable = 0;
  for (std::uint64_t batch = 0; batch < max_batches && stable < kStableBatches; ++batch) {
    auto pts = sample_points(family, s, 2 * kBatchPairs, s.seed + batch);
    for (std::size_t k = 0; k < kBatchPairs; ++k) {
      auto lv = value_vector(p, family, pts[2 * k]);
      auto lw = value_vector(p, family, pts[2 * k + 1]);
      out.points.push_back(pts[2 * k]);
      out.points.push_back(pts[2 * k + 1]);
      auto d = difference(lv, lw);
      add_value_vector(out, std::move(lv));
      add_value_vector(out, std::move(lw));
      if (!all_zero(d) &&
          std::find(out.differences.begin(), out.differences.end(), d) == out.differences.end()) {
        out.differences.push_back(std::move(d));
      }
    }
    std::size_t r = rational_rank(out.differences, n);
    stable = (r == rank) ? stable + 1 : 0;
    rank = r;
  }
  return out;
}

std::vector<std::size_t> bareiss_echelon(IntMatrix& m) {
  std::vector<std::size_t> pivots;
  Integer prev = 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, row);
    for (std::size_t r = row + 1; r < m.rows(); ++r) {
      for (std::size_t c = col + 1; c < m.cols(); ++c) {
        Integer num = m(row, col) * m(r, c) - m(r, col) * m(row, c);
        mpz_divexact(m(r, c).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      m(r, col) = 0;
    }
    prev = m(row, col);
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<std::vector<Rational>> rational_orthogonal_complement(
    const std::vector<std::vector<Integer>>& vectors, std::size_t n) {
  IntMatrix m(vectors.size(), n);
  for (std::size_t r = 0; r < vectors.size(); ++r) {
    if (vectors[r].size() != n) throw InvalidInput("vector length mismatch");
    for (std::size_t c = 0; c < n; ++c) m(r, c) = vectors[r][c];
  }
  const std::size_t rank = bareiss_echelon(m).size();
  Matrix<Rational> echelon(rank, n);
  for (std::size_t r = 0; r < rank; ++r)
    for (std::size_t c = 0; c < n; ++c) echelon(r, c) = m(r, c);
  auto null = nullspace(std::move(echelon));
  if (null.empty()) return {};
  Matrix<Rational> basis(null.size(), n);
  for (std::size_t r = 0; r < null.size(); ++r)
    for (std::size_t c = 0; c < n; ++c) basis(r, c) = null[r][c];
  const std::size_t k = rref(basis).size();
  std::vector<std::vector<Rational>> out;
  for (std::size_t r = 0; r < k; ++r) out.push_back(basis.row(r));
  return out;
}

std::optional<std::vector<Integer>> find_nonnegative_integer_vector(
    const std::vector<std::vector<Rational>>& basis, std::size_t n) {
  if (basis.empty() || n == 0) return std::nullopt;
  // x lies in span(basis) iff it is orthogonal to the complement of the span.
  Matrix<Rational> b(basis.size(), n);
  for (std::size_t r = 0; r < basis.size(); ++r) {
    if (basis[r].size() != n) throw InvalidInput("vector length mismatch");
    for (std::size_t c = 0; c < n; ++c) b(r, c) = basis[r][c];
  }
  auto normals = nullspace(b);
  Matrix<Rational> a(normals.size() + 1, n);
  std::vector<Rational> rhs(normals.size() + 1, Rational(0));
  for (std::size_t r = 0; r < normals.size(); ++r)
    for (std::size_t c = 0; c < n; ++c) a(r, c) = normals[r][c];
  for (std::size_t c = 0; c < n; ++c) a(normals.size(), c) = 1;
  rhs.back() = 1;
  auto lp = simplex_standard(a, rhs, std::vector<Rational>(n, Rational(0)));
  if (lp.status != LpStatus::Optimal) return std::nullopt;

  Integer den = 1;
  for (const Rational& x : lp.x) den = lcm_of(den, x.get_den());
  std::vector<Integer> g(n);
  Integer common = 0;
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = lp.x[i].get_num() * (den / lp.x[i].get_den());
    mpz_gcd(common.get_mpz_t(), common.get_mpz_t(), g[i].get_mpz_t());
  }
  for (Integer& x : g) x /= common;
  return g;
}

SynthesisResult synthesize(const HalfOpenPolytope& p, const CosetFamily& family,
                           const VerificationMode& mode, const SynthesisOptions& options) {
  DifferenceCollection collection = collect_difference_vectors(p, family, mode);
  const std::size_t n = family.size();
  auto complement = rational_orthogonal_complement(collection.differences, n);
  auto g = find_nonnegative_integer_vector(complement, n);
  if (!g) {
    return SynthesisFailure{"NoNonnegativeVector",
                            "the complement of the difference space meets the nonnegative "
                            "orthant only at 0",
                            std::move(collection)};
  }
  std::vector<std::int64_t> weights(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(*g)[i].fits_slong_p()) {
      return SynthesisFailure{"weights", "weight exceeds the 64-bit range", std::move(collection)};
    }
    weights[i] = (*g)[i].get_si();
  }

  EnumeratorContext ctx(p, family.as_quasi_periodic(weights));
  std::vector<Vec> checks;
  if (collection.exact) {
    checks = collection.points;
  } else {
    const Sampled& s = std::get<Sampled>(mode);
    // A stream disjoint from the collection batches.
    checks = sample_points(family, s, options.verification_samples,
                           s.seed ^ 0x9e3779b97f4a7c15ULL);
  }
  const std::int64_t m = L_half_open(ctx, collection.points.front());
  if (m <= 0) {
    return SynthesisFailure{"multiplicity", "weighted enumerator vanishes at the reference point",
                            std::move(collection)};
  }
  for (const Vec& v : checks) {
    if (L_half_open(ctx, v) != m) {
      return SynthesisFailure{"verification",
                              "weighted enumerator is not constant at " + to_string(v),
                              std::move(collection)};
    }
  }
  WeightSolution out;
  out.weights = std::move(*g);
  out.multiplicity = m;
  out.points_verified = checks.size();
  out.exact = collection.exact;
  out.collection = std::move(collection);
  out.complement = std::move(complement);
  return out;
}

}  // namespace multitile
