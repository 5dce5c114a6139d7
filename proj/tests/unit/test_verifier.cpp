#include <doctest.h>

#include <set>

#include "multitile/arrangement.hpp"
#include "multitile/io.hpp"
#include "multitile/verifier.hpp"
#include "oracles.hpp"

using namespace multitile;

namespace {

Vec v2(Rational x, Rational y) { return {Scalar(x), Scalar(y)}; }
Scalar half_sqrt2() { return Scalar::sqrt(Rational(2)) / Scalar(2); }

HalfOpenPolytope rectangle() {
  return HalfOpenPolytope(Polytope::box(v2(0, 0), v2(1, Rational(1, 2))));
}
HalfOpenPolytope square() { return HalfOpenPolytope(Polytope::box(v2(0, 0), v2(1, 1))); }
QuasiPeriodicSet example_q() {
  return {{{Lattice::integer(2), v2(0, 0), 1},
           {Lattice::integer(2), {half_sqrt2(), Scalar(Rational(1, 2))}, 1}}};
}
QuasiPeriodicSet z2(std::int64_t w = 1) { return {{{Lattice::integer(2), v2(0, 0), w}}}; }
QuasiPeriodicSet two_cosets() {
  return {{{Lattice::integer(2), v2(0, 0), 1},
           {Lattice::integer(2), v2(Rational(1, 2), Rational(1, 2)), 1}}};
}

std::int64_t m_of(const VerificationResult& r) {
  const auto* c = std::get_if<TilingCertificate>(&r);
  return c ? c->multiplicity : -1;
}

}  // namespace

TEST_SUITE("tiling-verifier") {

TEST_CASE("exact certification examples") {
  VerificationResult r = verify_constant_multiplicity(rectangle(), example_q(), ExactTorus2D{});
  REQUIRE(std::holds_alternative<TilingCertificate>(r));
  const auto& c = std::get<TilingCertificate>(r);
  CHECK(c.multiplicity == 1);
  CHECK(c.certified);
  CHECK(c.cells_checked > 0);
  CHECK(c.edges_checked > 0);
  CHECK(c.vertices_checked > 0);
  REQUIRE(c.period);
  CHECK(c.period->same_as(Lattice::integer(2)));

  CHECK(m_of(verify_constant_multiplicity(square(), z2(), ExactTorus2D{})) == 1);
}

TEST_CASE("a single coset of the example is a discrepancy with values {0,1}") {
  for (std::size_t i = 0; i < 2; ++i) {
    VerificationResult r =
        verify_constant_multiplicity(rectangle(), example_q().subset({i}), ExactTorus2D{});
    REQUIRE(std::holds_alternative<Discrepancy>(r));
    const auto& d = std::get<Discrepancy>(r);
    CHECK(d.observed == std::vector<std::int64_t>{0, 1});
    REQUIRE(d.realizers.size() == 2);
    // each value is reproduced by the enumerator and by a direct sum
    EnumeratorContext ctx(rectangle(), example_q().subset({i}));
    WindowMultiset w = oracle::window_of(example_q().subset({i}), 4);
    for (std::size_t k = 0; k < 2; ++k) {
      CHECK(L_half_open(ctx, d.realizers[k]) == d.observed[k]);
      CHECK(coverage_count(rectangle(), Membership::HalfOpen, w, d.realizers[k]) == d.observed[k]);
    }
  }
}

TEST_CASE("generic multiplicity examples") {
  CHECK(m_of(verify_generic_multiplicity(square(), z2(), ExactTorus2D{})) == 1);
  HalfOpenPolytope seg(Polytope::box({Scalar(0)}, {Scalar(2)}));
  QuasiPeriodicSet z1{{{Lattice::integer(1), {Scalar(0)}, 1}}};
  VerificationResult r = verify_generic_multiplicity(seg, z1, Sampled{2000, 5, std::nullopt});
  CHECK(m_of(r) == 2);
  CHECK_FALSE(std::get<TilingCertificate>(r).certified);
  QuasiPeriodicSet half{{{Lattice::integer(2).refined(2), v2(0, 0), 1}}};
  CHECK(m_of(verify_generic_multiplicity(rectangle(), half, ExactTorus2D{})) == 2);
}

TEST_CASE("exact mode availability") {
  CHECK(exact_mode_available(rectangle(), example_q()));
  HalfOpenPolytope cube(Polytope::box({Scalar(0), Scalar(0), Scalar(0)}, {Scalar(1), Scalar(1), Scalar(1)}));
  QuasiPeriodicSet z3{{{Lattice::integer(3), Vec(3, Scalar(0)), 1}}};
  CHECK_FALSE(exact_mode_available(cube, z3));
  CHECK_THROWS_AS(verify_constant_multiplicity(cube, z3, ExactTorus2D{}), ModeUnavailable);
  CHECK(std::holds_alternative<Sampled>(preferred_mode(cube, z3, Sampled{})));
  // two surds in one problem leave field mode
  QuasiPeriodicSet mixed{{{Lattice::integer(2), v2(0, 0), 1},
                          {Lattice::integer(2), {Scalar::sqrt(Rational(3)), Scalar(0)}, 1}}};
  HalfOpenPolytope wide(Polytope::box(v2(0, 0), {Scalar::sqrt(Rational(2)), Scalar(1)}));
  CHECK_FALSE(exact_mode_available(wide, mixed));
}

TEST_CASE("general position examples") {
  for (std::size_t i = 0; i < 2; ++i) {
    ConnectivityVerdict v = general_position_check(rectangle().base(), example_q(), i);
    REQUIRE(std::holds_alternative<Disconnected>(v));
    CHECK_FALSE(std::get<Disconnected>(v).witness.empty());
  }
  CHECK(std::holds_alternative<Connected>(general_position_check(square().base(), two_cosets(), 0)));
  CHECK(std::holds_alternative<Connected>(general_position_check(rectangle().base(), z2(), 0)));
  HalfOpenPolytope cube(Polytope::box({Scalar(0), Scalar(0), Scalar(0)}, {Scalar(1), Scalar(1), Scalar(1)}));
  QuasiPeriodicSet z3{{{Lattice::integer(3), Vec(3, Scalar(0)), 1},
                       {Lattice::integer(3), Vec(3, Scalar(Rational(1, 2))), 1}}};
  CHECK(std::holds_alternative<Inconclusive>(general_position_check(cube.base(), z3, 0)));
}

TEST_CASE("the example's separating set is the family of horizontal lines y in (1/2)Z") {
  ConnectivityVerdict v = general_position_check(rectangle().base(), example_q(), 0);
  REQUIRE(std::holds_alternative<Disconnected>(v));
  for (const Segment2& s : std::get<Disconnected>(v).witness) {
    CHECK(s.a.y == s.b.y);
    Scalar twice = s.a.y * Scalar(2);
    CHECK(twice.is_integer());
  }
}

TEST_CASE("pipelines") {
  PipelineOutcome a = theorem_1_1_pipeline(square(), two_cosets(), 0, ExactTorus2D{});
  CHECK(a.multiplicity == 1);
  PipelineOutcome b = theorem_1_1_pipeline(rectangle(), example_q(), 0, ExactTorus2D{});
  CHECK_FALSE(b.multiplicity);
  CHECK(std::holds_alternative<Disconnected>(b.connectivity));
  PipelineOutcome c = theorem_1_1_pipeline(rectangle(), z2(), 0, ExactTorus2D{});
  CHECK(std::holds_alternative<Connected>(c.connectivity));
  CHECK_FALSE(c.multiplicity);
  REQUIRE(c.verification);
  CHECK(std::holds_alternative<Discrepancy>(*c.verification));

  CHECK(split_check(square(), two_cosets(), {0}, {1}, ExactTorus2D{}).multiplicity == 1);
  PipelineOutcome d = split_check(rectangle(), example_q(), {0}, {1}, ExactTorus2D{});
  CHECK(std::holds_alternative<Disconnected>(d.connectivity));
  CHECK_FALSE(d.multiplicity);
  PipelineOutcome e = split_check(rectangle(), example_q(), {0, 1}, {}, ExactTorus2D{});
  CHECK(std::holds_alternative<Connected>(e.connectivity));
  CHECK(e.multiplicity == 1);
  CHECK_THROWS_AS(split_check(rectangle(), example_q(), {}, {0, 1}, ExactTorus2D{}), InvalidInput);
}

TEST_CASE("property: exact results agree with 10^4 seeded samples") {
  struct Case {
    HalfOpenPolytope p;
    QuasiPeriodicSet q;
  };
  std::vector<Case> cases = {
      {rectangle(), example_q()},
      {square(), z2()},
      {square(), two_cosets()},
      {rectangle(), QuasiPeriodicSet{{{Lattice::integer(2).refined(2), v2(0, 0), 1}}}},
  };
  for (const Case& c : cases) {
    VerificationResult exact = verify_constant_multiplicity(c.p, c.q, ExactTorus2D{});
    VerificationResult sampled = verify_constant_multiplicity(c.p, c.q, Sampled{10000, 7, std::nullopt});
    REQUIRE(m_of(exact) > 0);
    CHECK(m_of(sampled) == m_of(exact));
  }
}

TEST_CASE("property: reports are reproducible") {
  Sampled s{500, 99, std::nullopt};
  Json a = verification_to_json(verify_constant_multiplicity(rectangle(), z2(), s));
  Json b = verification_to_json(verify_constant_multiplicity(rectangle(), z2(), s));
  CHECK(a.dump() == b.dump());
  Json c = verification_to_json(verify_constant_multiplicity(rectangle(), example_q(), ExactTorus2D{}));
  Json d = verification_to_json(verify_constant_multiplicity(rectangle(), example_q(), ExactTorus2D{}));
  CHECK(c.dump() == d.dump());
}

TEST_CASE("property: half-open and generic multiplicities agree") {
  oracle::Rng rng(41);
  for (int trial = 0; trial < 12; ++trial) {
    // rational boxes with lattices that tile them a whole number of times
    long a = rng.integer(1, 3), b = rng.integer(1, 3);
    Rational sx(1, rng.integer(1, 3)), sy(1, rng.integer(1, 3));
    HalfOpenPolytope p(Polytope::box(v2(0, 0), v2(a, b)));
    QuasiPeriodicSet q{{{Lattice::from_columns({v2(sx, 0), v2(0, sy)}), v2(rng.rational(0, 1, 5), 0), 1}}};
    VerificationResult h = verify_constant_multiplicity(p, q, ExactTorus2D{});
    VerificationResult g = verify_generic_multiplicity(p, q, ExactTorus2D{});
    REQUIRE(m_of(h) > 0);
    CHECK(m_of(h) == m_of(g));
    Rational expected = Rational(a * b) / (sx * sy);
    CHECK(Rational(m_of(h)) == expected);
  }
}

TEST_CASE("property: doubling weights doubles the multiplicity") {
  QuasiPeriodicSet q = example_q();
  for (auto& c : q.cosets) c.weight *= 2;
  CHECK(m_of(verify_constant_multiplicity(rectangle(), q, ExactTorus2D{})) == 2);
  CHECK(m_of(verify_constant_multiplicity(square(), z2(3), ExactTorus2D{})) == 3);
  QuasiPeriodicSet t = two_cosets();
  for (auto& c : t.cosets) c.weight = 5;
  CHECK(m_of(verify_constant_multiplicity(square(), t, ExactTorus2D{})) == 10);
}

TEST_CASE("complement connectivity on the torus") {
  auto seg = [](Rational ax, Rational ay, Rational bx, Rational by) {
    return Segment2::make({Scalar(ax), Scalar(ay)}, {Scalar(bx), Scalar(by)});
  };
  CHECK(complement_connectivity({}).connected);
  CHECK(complement_connectivity({seg(Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1, 2))}).connected);
  // a full horizontal line leaves a cylinder on the torus but strips in the plane
  TorusConnectivity h = complement_connectivity({seg(0, Rational(1, 2), 1, Rational(1, 2))});
  CHECK(h.torus_connected);
  CHECK_FALSE(h.connected);
  CHECK_FALSE(complement_connectivity({seg(0, 0, 1, 1)}).connected);
  CHECK_FALSE(complement_connectivity({seg(Rational(1, 3), 0, Rational(1, 3), 1)}).connected);
  // a cross of a horizontal and a vertical line cuts the plane into squares
  TorusConnectivity x = complement_connectivity(
      {seg(0, Rational(1, 2), 1, Rational(1, 2)), seg(Rational(1, 2), 0, Rational(1, 2), 1)});
  CHECK_FALSE(x.connected);
  CHECK(x.torus_connected);
  // a horizontal line with a gap still lets paths through
  CHECK(complement_connectivity({seg(0, Rational(1, 2), Rational(1, 3), Rational(1, 2)),
                                 seg(Rational(1, 2), Rational(1, 2), 1, Rational(1, 2))})
            .connected);
}

TEST_CASE("face representatives of a small arrangement") {
  auto seg = [](Rational ax, Rational ay, Rational bx, Rational by) {
    return Segment2::make({Scalar(ax), Scalar(ay)}, {Scalar(bx), Scalar(by)});
  };
  // the unit square boundary plus one horizontal chord: 2 cells
  FaceRepresentatives f = torus_faces({seg(0, Rational(1, 2), 1, Rational(1, 2))});
  CHECK(f.cell_points.size() == 2);
  CHECK(f.vertices.size() == 6);
  CHECK(f.edge_points.size() == 7);
  // crossing diagonals: every one of the 4 triangles is represented
  FaceRepresentatives g = torus_faces({seg(0, 0, 1, 1), seg(0, 1, 1, 0)});
  CHECK(g.vertices.size() == 5);
  std::set<int> seen;
  for (const Point2& p : g.cell_points) {
    int above_main = (p.y - p.x).sign(), above_anti = (p.y + p.x - Scalar(1)).sign();
    REQUIRE(above_main != 0);
    REQUIRE(above_anti != 0);
    seen.insert(2 * (above_main > 0) + (above_anti > 0));
  }
  CHECK(seen.size() == 4);
}

TEST_CASE("sampling helpers are deterministic and land in their region") {
  auto a = sample_box(v2(0, 0), v2(1, 2), 100, 3);
  auto b = sample_box(v2(0, 0), v2(1, 2), 100, 3);
  CHECK(a == b);
  for (const Vec& p : a) {
    CHECK(p[0] >= Scalar(0));
    CHECK(p[0] < Scalar(1));
    CHECK(p[1] < Scalar(2));
  }
  HalfOpenPolytope fd = fundamental_domain(Lattice::integer(2).refined(3));
  for (const Vec& p : sample_fundamental_domain(Lattice::integer(2).refined(3), 100, 4)) {
    CHECK(fd.contains(p));
  }
}

}  // TEST_SUITE
