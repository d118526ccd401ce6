#include <benchmark/benchmark.h>

#include <w11/dyadic.hpp>
#include <w11/nonlocal.hpp>
#include <w11tools/corpus.hpp>

namespace {

w11::GridMap fixture(int d, long n) {
  w11tools::CorpusSpec spec;
  spec.family = w11tools::Family::MultiBump;
  spec.d = d;
  spec.n = n;
  spec.h = 2.0 / static_cast<double>(n);
  return w11tools::generate(spec);
}

void pair_integral_euclidean(benchmark::State& state) {
  const auto u = fixture(static_cast<int>(state.range(0)), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(w11::pair_integral(u, 0.5, w11::Norm::Euclidean, 2));
}
BENCHMARK(pair_integral_euclidean)->Args({1, 128})->Args({2, 32})->Args({2, 64})->Unit(benchmark::kMillisecond);

void pair_integral_sup(benchmark::State& state) {
  const auto u = fixture(static_cast<int>(state.range(0)), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(w11::pair_integral(u, 0.5, w11::Norm::Sup));
}
BENCHMARK(pair_integral_sup)->Args({1, 128})->Args({2, 32})->Args({2, 64})->Unit(benchmark::kMillisecond);

void project_dyadic(benchmark::State& state) {
  const auto u = fixture(2, state.range(0));
  w11::DyadicLattice lattice;
  for (auto _ : state) benchmark::DoNotOptimize(w11::project_dyadic(u, lattice, static_cast<int>(state.range(1))));
}
BENCHMARK(project_dyadic)->Args({64, 1})->Args({64, 3})->Args({128, 2})->Unit(benchmark::kMillisecond);

void smooth_extension(benchmark::State& state) {
  const auto u0 = fixture(2, state.range(0));
  w11tools::CorpusSpec spec;
  spec.d = 2;
  spec.n = state.range(0);
  spec.h = u0.h();
  const auto u1 = w11tools::generate(spec);
  w11::DyadicLattice lattice;
  const auto p0 = w11::pad_to_lattice(u0, lattice);
  const auto p1 = w11::pad_to_lattice(u1, lattice);
  const auto schedule = w11::select_schedule(p0, p1, lattice, 3);
  const auto e = w11::build_bv_extension(p0, p1, schedule);
  for (auto _ : state) benchmark::DoNotOptimize(w11::smooth_extension(e, u0.h() / 8.0));
}
BENCHMARK(smooth_extension)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
