#include <benchmark/benchmark.h>

#include "anderson/asymptotics.hpp"
#include "anderson/eigensolve.hpp"
#include "anderson/fourier_norm.hpp"
#include "anderson/free_spectrum.hpp"
#include "anderson/measure.hpp"

using namespace anderson;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(1) ? Exec::parallel : Exec::serial; }

SiteField bench_field(int d, int L) {
  return make_field(CubeSpec(d, L), UniformSym{1.0}, Decaying{1.0, 0.5}, 7);
}

void BM_TridiagonalizeReference(benchmark::State& state) {
  const auto dense = to_dense(assemble_hamiltonian(CubeSpec(3, static_cast<int>(state.range(0))), bench_field(3, static_cast<int>(state.range(0)))));
  for (auto _ : state) benchmark::DoNotOptimize(reference::tridiagonalize(dense));
}
BENCHMARK(BM_TridiagonalizeReference)->Args({4, 0})->Args({5, 0})->Unit(benchmark::kMillisecond);

void BM_Tridiagonalize(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  const auto m = assemble_hamiltonian(CubeSpec(3, L), bench_field(3, L));
  for (auto _ : state) benchmark::DoNotOptimize(tridiagonalize(m, exec_of(state)));
}
BENCHMARK(BM_Tridiagonalize)->ArgsProduct({{4, 5}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_EnumerateWindow(benchmark::State& state) {
  EnumerationOptions options;
  options.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_window(3, static_cast<int>(state.range(0)), 5.0, 2.0, options));
}
BENCHMARK(BM_EnumerateWindow)->ArgsProduct({{80, 320}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_CountingGrid(benchmark::State& state) {
  const auto field = bench_field(3, static_cast<int>(state.range(0)));
  RandomMeasureOptions options;
  options.counting_nodes = 128;
  options.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(random_measure_counting(field, 5.0, -1.0, 1.0, options));
}
BENCHMARK(BM_CountingGrid)->ArgsProduct({{4, 6}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_FourierNorm(benchmark::State& state) {
  const TestFunction f(Bump{0.0, static_cast<double>(state.range(0))});
  FourierNormOptions options;
  options.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(fourier_weighted_norm(f, options));
}
BENCHMARK(BM_FourierNorm)->ArgsProduct({{1, 4}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_DecayRows(benchmark::State& state) {
  DecayConfig config;
  config.d = 3;
  config.Ls = {3, 4};
  config.energy = 5.0;
  config.f = TestFunction(Bump{0.0, 2.0});
  config.options.seed_count = static_cast<int>(state.range(0));
  config.options.exec = exec_of(state);
  config.options.measure.exec = exec_of(state);
  config.f.fourier_norm();
  for (auto _ : state) benchmark::DoNotOptimize(decay_experiment(config));
}
BENCHMARK(BM_DecayRows)->ArgsProduct({{4}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
