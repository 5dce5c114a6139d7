#include <doctest.h>

#include <algorithm>
#include <set>

#include "multitile/synthesizer.hpp"
#include "oracles.hpp"

using namespace multitile;

namespace {

Vec v2(Rational x, Rational y) { return {Scalar(x), Scalar(y)}; }
using IVec = std::vector<Integer>;
using QVec = std::vector<Rational>;

Rational q(std::int64_t p, std::int64_t d) {
  Rational r(Integer(static_cast<long>(p)), Integer(static_cast<long>(d)));
  r.canonicalize();
  return r;
}

HalfOpenPolytope rectangle() {
  return HalfOpenPolytope(Polytope::box(v2(0, 0), v2(1, Rational(1, 2))), ProbeDirection{{1, 1}});
}
HalfOpenPolytope square() {
  return HalfOpenPolytope(Polytope::box(v2(0, 0), v2(1, 1)), ProbeDirection{{1, 1}});
}
CosetFamily family(std::vector<Vec> offsets) { return {Lattice::integer(2), std::move(offsets)}; }

// Value vectors on the grid (1/den) Z^2 mod 1, counted by a direct scan of
// integer translates against the half-open rule.
std::set<std::vector<std::int64_t>> grid_values(const oracle::RPolytope& p,
                                                const std::vector<oracle::RVec>& offsets,
                                                long den) {
  std::set<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> h{1, 1};
  for (long i = 0; i < den; ++i)
    for (long j = 0; j < den; ++j) {
      Rational vx(i, den), vy(j, den);
      vx.canonicalize();
      vy.canonicalize();
      std::vector<std::int64_t> values;
      for (const auto& a : offsets) {
        std::int64_t count = 0;
        oracle::scan_cube(2, 3, [&](const std::vector<Integer>& z) {
          oracle::RVec x{vx - a[0] - Rational(z[0]), vy - a[1] - Rational(z[1])};
          count += p.half_open(x, h);
        });
        values.push_back(count);
      }
      out.insert(values);
    }
  return out;
}

std::size_t rational_rank(const std::vector<IVec>& rows) {
  if (rows.empty()) return 0;
  Matrix<Rational> m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = Rational(rows[r][c]);
  return rank(m);
}

}  // namespace

TEST_SUITE("weight-synthesizer") {

TEST_CASE("difference collection examples") {
  DifferenceCollection a =
      collect_difference_vectors(square(), family({v2(0, 0), v2(Rational(1, 2), Rational(1, 2))}), ExactTorus2D{});
  CHECK(a.exact);
  CHECK(a.value_vectors == std::vector<std::vector<std::int64_t>>{{1, 1}});
  CHECK(rational_rank(a.differences) == 0);

  DifferenceCollection b = collect_difference_vectors(rectangle(), family({v2(0, 0)}), ExactTorus2D{});
  std::set<std::vector<std::int64_t>> bv(b.value_vectors.begin(), b.value_vectors.end());
  CHECK(bv == std::set<std::vector<std::int64_t>>{{0}, {1}});
  CHECK(rational_rank(b.differences) == 1);

  DifferenceCollection c =
      collect_difference_vectors(rectangle(), family({v2(0, 0), v2(0, Rational(1, 2))}), ExactTorus2D{});
  std::set<std::vector<std::int64_t>> cv(c.value_vectors.begin(), c.value_vectors.end());
  CHECK(cv == std::set<std::vector<std::int64_t>>{{1, 0}, {0, 1}});
  CHECK(rational_rank(c.differences) == 1);
  for (const IVec& d : c.differences) CHECK(d[0] + d[1] == 0);

  // an independent grid scan realises the same value vectors
  oracle::RPolytope rp = oracle::rbox({0, 0}, {1, Rational(1, 2)});
  CHECK(grid_values(rp, {{0, 0}, {0, Rational(1, 2)}}, 8) == cv);
  CHECK(grid_values(rp, {{0, 0}}, 8) == bv);
}

TEST_CASE("orthogonal complement examples") {
  CHECK(rational_orthogonal_complement({}, 2) == std::vector<QVec>{{1, 0}, {0, 1}});
  CHECK(rational_orthogonal_complement({{1, -1}}, 2) == std::vector<QVec>{{1, 1}});
  CHECK(rational_orthogonal_complement({{1, 0}, {0, 1}}, 2).empty());
  CHECK(rational_orthogonal_complement({{0, 0}}, 2).size() == 2);
}

TEST_CASE("nonnegative vector examples") {
  CHECK(find_nonnegative_integer_vector({{1, 0}, {0, 1}}, 2) == IVec{1, 0});
  CHECK(find_nonnegative_integer_vector({{1, 1}}, 2) == IVec{1, 1});
  CHECK_FALSE(find_nonnegative_integer_vector({{1, -1}}, 2).has_value());
  CHECK_FALSE(find_nonnegative_integer_vector({}, 2).has_value());
  // scaled to a primitive integer vector
  CHECK(find_nonnegative_integer_vector({{Rational(2, 3), Rational(4, 3), 0}}, 3) == IVec{1, 2, 0});
}

TEST_CASE("Bareiss elimination keeps integer entries and finds the rank") {
  IntMatrix m(3, 3);
  long entries[3][3] = {{2, 4, 6}, {1, 3, 5}, {3, 7, 11}};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = entries[r][c];
  auto pivots = bareiss_echelon(m);
  CHECK(pivots == std::vector<std::size_t>{0, 1});
  for (std::size_t c = 0; c < 3; ++c) CHECK(m(2, c) == 0);
}

TEST_CASE("synthesis examples") {
  SynthesisResult a = synthesize(rectangle(), family({v2(0, 0), v2(0, Rational(1, 2))}), ExactTorus2D{});
  REQUIRE(std::holds_alternative<WeightSolution>(a));
  CHECK(std::get<WeightSolution>(a).weights == IVec{1, 1});
  CHECK(std::get<WeightSolution>(a).multiplicity == 1);
  CHECK(std::get<WeightSolution>(a).exact);

  SynthesisResult b = synthesize(rectangle(), family({v2(0, 0)}), ExactTorus2D{});
  REQUIRE(std::holds_alternative<SynthesisFailure>(b));
  CHECK(std::get<SynthesisFailure>(b).stage == "NoNonnegativeVector");

  for (std::size_t d = 1; d <= 3; ++d) {
    HalfOpenPolytope cube(Polytope::box(Vec(d, Scalar(0)), Vec(d, Scalar(1))));
    CosetFamily f{Lattice::integer(d), {Vec(d, Scalar(0))}};
    VerificationMode mode = d == 2 ? VerificationMode(ExactTorus2D{}) : VerificationMode(Sampled{2000, 1, std::nullopt});
    SynthesisResult r = synthesize(cube, f, mode);
    REQUIRE(std::holds_alternative<WeightSolution>(r));
    CHECK(std::get<WeightSolution>(r).weights == IVec{1});
    CHECK(std::get<WeightSolution>(r).multiplicity == 1);
  }
}

TEST_CASE("family validation") {
  CHECK_THROWS_AS(family({}).validate(), InvalidInput);
  CHECK_THROWS_AS(family({v2(0, 0), v2(1, 2)}).validate(), InvalidInput);
  CHECK_NOTHROW(family({v2(0, 0), v2(0, Rational(1, 2))}).validate());
}

TEST_CASE("property: weights are orthogonal to all differences and satisfy the identity") {
  oracle::Rng rng(51);
  int solved = 0;
  for (int trial = 0; trial < 40; ++trial) {
    // random rational rectangles with up to 3 rational offsets
    Rational w = q(rng.integer(1, 3), rng.integer(1, 3)), h = q(rng.integer(1, 3), rng.integer(1, 3));
    HalfOpenPolytope p(Polytope::box(v2(0, 0), v2(w, h)));
    std::vector<Vec> offsets{v2(0, 0)};
    std::int64_t n = rng.integer(1, 3);
    for (std::int64_t k = 1; k < n; ++k) offsets.push_back(v2(q(rng.integer(0, 3), 4), q(rng.integer(0, 3), 4)));
    CosetFamily f = family(offsets);
    try {
      f.validate();
    } catch (const InvalidInput&) {
      continue;
    }
    SynthesisResult r = synthesize(p, f, ExactTorus2D{});
    const auto* s = std::get_if<WeightSolution>(&r);
    if (!s) continue;
    ++solved;
    for (const IVec& d : s->collection.differences) {
      Integer acc = 0;
      for (std::size_t i = 0; i < d.size(); ++i) acc += d[i] * s->weights[i];
      CHECK(acc == 0);
    }
    std::vector<std::int64_t> g;
    for (const Integer& x : s->weights) g.push_back(x.get_si());
    for (const Vec& v : sample_box(v2(-2, -2), v2(2, 2), 25, trial)) {
      auto vals = value_vector(p, f, v);
      std::int64_t total = 0;
      for (std::size_t i = 0; i < vals.size(); ++i) total += g[i] * vals[i];
      CHECK(total == s->multiplicity);
    }
  }
  CHECK(solved >= 4);
}

TEST_CASE("property: the identity holds at 1000 fresh points for the example family") {
  CosetFamily f = family({v2(0, 0), v2(0, Rational(1, 2))});
  SynthesisResult r = synthesize(rectangle(), f, ExactTorus2D{});
  REQUIRE(std::holds_alternative<WeightSolution>(r));
  const auto& s = std::get<WeightSolution>(r);
  oracle::Rng rng(52);
  for (int k = 0; k < 1000; ++k) {
    Vec v = v2(Rational(rng.integer(-64, 64), 16), Rational(rng.integer(-64, 64), 16));
    auto vals = value_vector(rectangle(), f, v);
    CHECK(s.weights[0] * vals[0] + s.weights[1] * vals[1] == s.multiplicity);
  }
}

TEST_CASE("property: shifting offsets by lattice vectors changes nothing") {
  CosetFamily f = family({v2(0, 0), v2(0, Rational(1, 2))});
  CosetFamily g = family({v2(3, -1), v2(-2, Rational(5, 2))});
  auto a = synthesize(rectangle(), f, ExactTorus2D{});
  auto b = synthesize(rectangle(), g, ExactTorus2D{});
  REQUIRE(std::holds_alternative<WeightSolution>(a));
  REQUIRE(std::holds_alternative<WeightSolution>(b));
  const auto& sa = std::get<WeightSolution>(a);
  const auto& sb = std::get<WeightSolution>(b);
  CHECK(sa.weights == sb.weights);
  CHECK(sa.multiplicity == sb.multiplicity);
  std::set<std::vector<std::int64_t>> va(sa.collection.value_vectors.begin(), sa.collection.value_vectors.end());
  std::set<std::vector<std::int64_t>> vb(sb.collection.value_vectors.begin(), sb.collection.value_vectors.end());
  CHECK(va == vb);
}

TEST_CASE("property: exact collection spans everything seen by 10^4 extra random pairs") {
  struct Case {
    HalfOpenPolytope p;
    CosetFamily f;
  };
  Scalar r2 = Scalar::sqrt(Rational(2)) / Scalar(2);
  std::vector<Case> cases = {
      {rectangle(), family({v2(0, 0), v2(0, Rational(1, 2))})},
      {rectangle(), family({v2(0, 0), {r2, Scalar(Rational(1, 2))}})},
      {rectangle(), family({v2(0, 0), v2(Rational(1, 3), Rational(1, 4)), v2(Rational(1, 2), 0)})},
  };
  for (const Case& c : cases) {
    DifferenceCollection col = collect_difference_vectors(c.p, c.f, ExactTorus2D{});
    std::size_t base = rational_rank(col.differences);
    std::set<IVec> extra;
    auto pts = sample_box(v2(-1, -1), v2(2, 2), 10000, 77);
    auto prev = value_vector(c.p, c.f, pts.front());
    for (std::size_t k = 1; k < pts.size(); ++k) {
      auto cur = value_vector(c.p, c.f, pts[k]);
      IVec d;
      for (std::size_t i = 0; i < cur.size(); ++i) d.push_back(Integer(static_cast<long>(cur[i] - prev[i])));
      extra.insert(d);
      prev = cur;
    }
    std::vector<IVec> rows = col.differences;
    rows.insert(rows.end(), extra.begin(), extra.end());
    CHECK(extra.size() > 1);
    CHECK(rational_rank(rows) == base);
  }
}

}  // TEST_SUITE
