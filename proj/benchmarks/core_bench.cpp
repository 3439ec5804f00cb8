#include <benchmark/benchmark.h>

#include "veronese/approx.hpp"
#include "veronese/classes.hpp"
#include "veronese/counting.hpp"
#include "veronese/lattice.hpp"
#include "veronese/mobius.hpp"
#include "veronese/polyarith.hpp"
#include "veronese/realexpr.hpp"
#include "veronese/roots.hpp"

namespace {

using namespace veronese;

void bm_phi(benchmark::State& state) {
  const Mat2 B{3, -2, 5, -3};
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(phi(n, B));
}
BENCHMARK(bm_phi)->DenseRange(2, 8, 3);

void bm_discriminant(benchmark::State& state) {
  const IntPoly p{7, -13, 4, 19};
  for (auto _ : state) benchmark::DoNotOptimize(discriminant(p));
}
BENCHMARK(bm_discriminant);

void bm_cubic_discriminant(benchmark::State& state) {
  const BigInt c0 = 7, c1 = -13, c2 = 4, c3 = 19;
  for (auto _ : state) benchmark::DoNotOptimize(cubic_discriminant(c0, c1, c2, c3));
}
BENCHMARK(bm_cubic_discriminant);

void bm_roots(benchmark::State& state) {
  const IntPoly p{7, -13, 4, 19};
  for (auto _ : state) benchmark::DoNotOptimize(roots(p, 1e-12));
}
BENCHMARK(bm_roots);

void bm_reduce(benchmark::State& state) {
  const IntPoly p{292, -710, 571, -152};
  for (auto _ : state) benchmark::DoNotOptimize(reduce_min_hd(p));
}
BENCHMARK(bm_reduce)->Unit(benchmark::kMillisecond);

void bm_minima(benchmark::State& state) {
  BoxSpec spec;
  spec.n = static_cast<int>(state.range(0));
  spec.x0 = Rational(1, 3);
  spec.Q = 1024;
  spec.lambda = Rational(1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(successive_minima(spec, Rational(1LL << 30)));
}
BENCHMARK(bm_minima)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void bm_count(benchmark::State& state) {
  CountOptions options;
  options.threads = 1;
  const long long h = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(count_nhd_grid(h, {10, 100, 1000, 10000}, options));
}
BENCHMARK(bm_count)->RangeMultiplier(2)->Range(10, 80)->Unit(benchmark::kMillisecond);

void bm_best_approx(benchmark::State& state) {
  const auto x = RealExpr::parse("cbrt(2)");
  for (auto _ : state) benchmark::DoNotOptimize(best_approx_seq(x, 2, 100000));
}
BENCHMARK(bm_best_approx)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
