#include <doctest.h>

#include "multitile/enumerator.hpp"
#include "oracles.hpp"

using namespace multitile;

namespace {

Vec v2(Rational x, Rational y) { return {Scalar(x), Scalar(y)}; }
Scalar half_sqrt2() { return Scalar::sqrt(Rational(2)) / Scalar(2); }

HalfOpenPolytope rectangle() {
  return HalfOpenPolytope(Polytope::box(v2(0, 0), v2(1, Rational(1, 2))), ProbeDirection{{1, 1}});
}
HalfOpenPolytope square() {
  return HalfOpenPolytope(Polytope::box(v2(0, 0), v2(1, 1)), ProbeDirection{{1, 1}});
}
QuasiPeriodicSet example_q() {
  return {{{Lattice::integer(2), v2(0, 0), 1},
           {Lattice::integer(2), {half_sqrt2(), Scalar(Rational(1, 2))}, 1}}};
}
QuasiPeriodicSet z2() { return {{{Lattice::integer(2), v2(0, 0), 1}}}; }

WindowMultiset window(std::initializer_list<Vec> pts) {
  WindowMultiset w;
  for (const Vec& p : pts) w.points.push_back({p, 1});
  return w;
}

}  // namespace

TEST_SUITE("point-enumerator") {

TEST_CASE("half-open enumerator examples") {
  EnumeratorContext ex(rectangle(), example_q());
  CHECK(L_half_open(ex, v2(Rational(1, 4), Rational(1, 4))) == 1);
  EnumeratorContext l1(rectangle(), z2());
  CHECK(L_half_open(l1, v2(Rational(1, 4), Rational(1, 4))) == 1);
  CHECK(L_half_open(l1, v2(Rational(1, 4), Rational(3, 4))) == 0);
  EnumeratorContext sq(square(), z2());
  oracle::Rng rng(31);
  for (int i = 0; i < 50; ++i) {
    CHECK(L_half_open(sq, v2(rng.rational(-5, 5, 4), rng.rational(-5, 5, 4))) == 1);
  }
}

TEST_CASE("closed enumerator examples") {
  EnumeratorContext sq(square(), z2());
  CHECK(L_closed(sq, v2(0, 0)) == 4);
  CHECK(L_closed(sq, v2(Rational(1, 2), Rational(1, 2))) == 1);
  // the y-window [v_y - 1/2, v_y] holds at most one integer, so the closed
  // rectangle count with Z^2 never exceeds 2
  EnumeratorContext rect(rectangle(), z2());
  CHECK(L_closed(rect, v2(0, Rational(1, 2))) == 2);
  oracle::RPolytope rp = oracle::rbox({0, 0}, {1, Rational(1, 2)});
  std::int64_t naive = 0;
  oracle::scan_cube(2, 3, [&](const std::vector<Integer>& z) {
    naive += rp.closed({-Rational(z[0]), Rational(1, 2) - Rational(z[1])});
  });
  CHECK(naive == 2);
}

TEST_CASE("coverage count examples") {
  CHECK(coverage_count(square(), Membership::HalfOpen, window({v2(0, 0), v2(-1, 0)}),
                       v2(Rational(1, 2), Rational(1, 2))) == 1);
  CHECK(coverage_count(square(), Membership::Closed, window({v2(0, 0), v2(1, 0)}), v2(1, 0)) == 2);
  // the finite window Q ∩ [-3,3]^2
  WindowMultiset w;
  for (long i = -3; i <= 3; ++i)
    for (long j = -3; j <= 3; ++j) {
      w.points.push_back({v2(i, j), 1});
      Vec shifted{half_sqrt2() + Scalar(i), Scalar(Rational(1, 2)) + Scalar(j)};
      if (shifted[0] <= Scalar(3) && shifted[1] <= Scalar(3)) w.points.push_back({shifted, 1});
    }
  CHECK(coverage_count(rectangle(), Membership::HalfOpen, w, v2(Rational(1, 4), Rational(1, 4))) == 1);
}

TEST_CASE("window multisets carry multiplicity") {
  WindowMultiset w;
  w.points.push_back({v2(0, 0), 3});
  w.points.push_back({v2(Rational(1, 2), 0), 2});
  EnumeratorContext ctx(square(), w);
  CHECK(L_half_open(ctx, v2(Rational(3, 4), Rational(1, 4))) == 5);
  CHECK(L_half_open(ctx, v2(Rational(1, 4), Rational(1, 4))) == 3);
  CHECK(w.total() == 5);
  WindowMultiset bad;
  bad.points.push_back({v2(0, 0), 0});
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
}

TEST_CASE("per-coset values") {
  auto values = L_half_open_per_coset(rectangle(), example_q(), v2(Rational(1, 4), Rational(1, 4)));
  CHECK(values == std::vector<std::int64_t>{1, 0});
}

TEST_CASE("property: enumerator identity against a direct indicator sum on 1000 windows") {
  oracle::Rng rng(32);
  std::vector<HalfOpenPolytope> shapes = {
      square(), rectangle(),
      HalfOpenPolytope(Polytope::from_vertices({v2(0, 0), v2(2, 1), v2(1, 3)})),
      HalfOpenPolytope(Polytope::box({Scalar(0), Scalar(0), Scalar(0)},
                                     {Scalar(1), Scalar(Rational(1, 2)), Scalar(2)}))};
  for (int trial = 0; trial < 1000; ++trial) {
    const HalfOpenPolytope& p = shapes[trial % shapes.size()];
    std::size_t d = p.base().dimension();
    WindowMultiset w;
    std::int64_t n = rng.integer(1, 30);
    for (std::int64_t k = 0; k < n; ++k) {
      Vec pt(d);
      // coarse grid so boundary hits are common
      for (auto& x : pt) x = Scalar(Rational(rng.integer(-8, 8), 4));
      w.points.push_back({pt, rng.integer(1, 3)});
    }
    Vec v(d);
    for (auto& x : v) x = Scalar(Rational(rng.integer(-8, 8), 4));
    EnumeratorContext ctx(p, w);
    CHECK(L_half_open(ctx, v) == coverage_count(p, Membership::HalfOpen, w, v));
    CHECK(L_closed(ctx, v) == coverage_count(p, Membership::Closed, w, v));
  }
}

TEST_CASE("property: quasi-periodic enumerator matches a large finite window") {
  oracle::Rng rng(33);
  QuasiPeriodicSet q = example_q();
  WindowMultiset w = oracle::window_of(q, 4);
  EnumeratorContext ctx(rectangle(), q);
  for (int trial = 0; trial < 200; ++trial) {
    Vec v = v2(rng.rational(-1, 1, 8), rng.rational(-1, 1, 8));
    if (trial % 3 == 0) v[0] += half_sqrt2();
    CHECK(L_half_open(ctx, v) == coverage_count(rectangle(), Membership::HalfOpen, w, v));
  }
}

TEST_CASE("property: periodicity over 1000 lattice instances") {
  oracle::Rng rng(34);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t d = 1 + trial % 3;
    oracle::RMat basis = oracle::random_basis(rng, d);
    Lattice l = oracle::to_lattice(basis);
    Vec lo(d), hi(d), v(d);
    for (std::size_t k = 0; k < d; ++k) {
      lo[k] = Scalar(rng.rational(-1, 0, 4));
      hi[k] = lo[k] + Scalar(rng.rational(1, 3, 4));
      v[k] = Scalar(rng.rational(-2, 2, 6));
    }
    HalfOpenPolytope p(Polytope::box(lo, hi));
    QuasiPeriodicSet q{{{l, Vec(d, Scalar(0)), 1}}};
    std::vector<Integer> z(d);
    for (auto& x : z) x = static_cast<long>(rng.integer(-6, 6));
    EnumeratorContext ctx(p, q);
    CHECK(L_half_open(ctx, v + l.point(z)) == L_half_open(ctx, v));
  }
}

TEST_CASE("property: closed enumerator is locally constant at generic points") {
  oracle::Rng rng(35);
  int generic = 0;
  for (int trial = 0; trial < 300; ++trial) {
    oracle::RMat basis = oracle::random_basis(rng, 2);
    oracle::RVec lo{rng.rational(-1, 0, 4), rng.rational(-1, 0, 4)};
    oracle::RVec hi{lo[0] + rng.rational(1, 2, 4), lo[1] + rng.rational(1, 2, 4)};
    oracle::RVec v{rng.rational(-2, 2, 16), rng.rational(-2, 2, 16)};
    // translated facets x_k = lambda_k + lo_k or hi_k over all nearby lambda
    Rational radius = -1;
    std::int64_t r = oracle::coordinate_radius(basis, {0, 0}, {v[0] - hi[0], v[1] - hi[1]},
                                               {v[0] - lo[0], v[1] - lo[1]}) + 1;
    oracle::scan_cube(2, r, [&](const std::vector<Integer>& z) {
      oracle::RVec lam = oracle::apply(basis, z);
      for (std::size_t k = 0; k < 2; ++k)
        for (const Rational& b : {lo[k], hi[k]}) {
          Rational dist = abs(v[k] - lam[k] - b);
          if (radius < 0 || dist < radius) radius = dist;
        }
    });
    if (sgn(radius) == 0) continue;  // on a translated boundary
    ++generic;
    Lattice l = oracle::to_lattice(basis);
    HalfOpenPolytope p(Polytope::box(oracle::to_vec(lo), oracle::to_vec(hi)));
    EnumeratorContext ctx(p, QuasiPeriodicSet{{{l, v2(0, 0), 1}}});
    Vec vv = oracle::to_vec(v);
    std::int64_t base = L_closed(ctx, vv);
    for (int k = 0; k < 8; ++k) {
      Rational dx = rng.rational(-1, 1, 16) * radius * Rational(99, 100);
      Rational dy = rng.rational(-1, 1, 16) * radius * Rational(99, 100);
      CHECK(L_closed(ctx, vv + v2(dx, dy)) == base);
    }
  }
  CHECK(generic > 100);
}

}  // TEST_SUITE
