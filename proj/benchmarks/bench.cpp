#include <benchmark/benchmark.h>

#include "multitile/enumerator.hpp"
#include "multitile/refiner.hpp"
#include "multitile/synthesizer.hpp"
#include "multitile/verifier.hpp"

using namespace multitile;

namespace {

Rational q(long p, long d) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}
Vec v2(const Scalar& x, const Scalar& y) { return {x, y}; }
Scalar sqrt2() { return Scalar::of(Generator::quadratic_surd(2)); }

HalfOpenPolytope rectangle() { return HalfOpenPolytope(Polytope::box(v2(0, 0), v2(1, q(1, 2)))); }

QuasiPeriodicSet example_q() {
  return {{{Lattice::integer(2), v2(0, 0), 1},
           {Lattice::integer(2), v2(sqrt2() * Scalar(q(1, 2)), Scalar(q(1, 2))), 1}}};
}

// n cosets of Z^2 at offsets in Q(sqrt2)
QuasiPeriodicSet many_cosets(long n) {
  QuasiPeriodicSet out;
  for (long k = 0; k < n; ++k) {
    Scalar x = sqrt2() * Scalar(q(k + 1, 29)), y = sqrt2() * Scalar(q(k * k + 3, 31)) + Scalar(q(k, 37));
    out.cosets.push_back({Lattice::integer(2), v2(x - Scalar(x.floor()), y - Scalar(y.floor())), 1});
  }
  return out;
}

void BM_ScalarSign(benchmark::State& state) {
  Scalar x = Scalar(q(99, 70)) - sqrt2();  // close to zero
  for (auto _ : state) benchmark::DoNotOptimize(x.sign());
}
BENCHMARK(BM_ScalarSign);

void BM_HalfOpenEnumerator(benchmark::State& state) {
  EnumeratorContext ctx(rectangle(), example_q());
  Vec v = v2(Scalar(q(1, 3)), Scalar(q(1, 5)));
  for (auto _ : state) benchmark::DoNotOptimize(L_half_open(ctx, v));
}
BENCHMARK(BM_HalfOpenEnumerator);

void BM_Enumerate3D(benchmark::State& state) {
  Lattice l = Lattice::from_columns({{Scalar(q(1, 3)), Scalar(0), Scalar(q(1, 11))},
                                     {Scalar(q(1, 7)), Scalar(q(2, 7)), Scalar(0)},
                                     {Scalar(q(-1, 5)), Scalar(q(1, 9)), Scalar(q(3, 10))}});
  Polytope box = Polytope::box(Vec(3, Scalar(0)), Vec(3, Scalar(state.range(0))));
  std::size_t n = 0;
  for (auto _ : state) n = enumerate_in_polytope(Coset{l, Vec(3, Scalar(0)), 1}, box).points.size();
  state.counters["points"] = static_cast<double>(n);
}
BENCHMARK(BM_Enumerate3D)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_ExactVerification(benchmark::State& state) {
  HalfOpenPolytope square(Polytope::box(v2(0, 0), v2(1, 1)));
  QuasiPeriodicSet qs = many_cosets(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_constant_multiplicity(square, qs, ExactTorus2D{}));
}
BENCHMARK(BM_ExactVerification)->Arg(1)->Arg(5)->Arg(10)->Arg(25)->Unit(benchmark::kMillisecond);

void BM_ExampleVerification(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_constant_multiplicity(rectangle(), example_q(), ExactTorus2D{}));
}
BENCHMARK(BM_ExampleVerification)->Unit(benchmark::kMicrosecond);

void BM_Synthesis(benchmark::State& state) {
  CosetFamily family{Lattice::integer(2), {v2(0, 0), v2(0, q(1, 2))}};
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(rectangle(), family, ExactTorus2D{}));
}
BENCHMARK(BM_Synthesis)->Unit(benchmark::kMicrosecond);

void BM_WeylSearch(benchmark::State& state) {
  Vec a{Scalar::of(Generator::quadratic_surd(3), q(1, 3)), Scalar::of(Generator::quadratic_surd(3), q(1, 7))};
  for (auto _ : state) benchmark::DoNotOptimize(weyl_search(a, q(1, 100), 100000));
}
BENCHMARK(BM_WeylSearch)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
