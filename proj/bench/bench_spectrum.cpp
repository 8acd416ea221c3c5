// Parallel kernels against their serial references.

#include "fraclap/spectrum.hpp"

#include <benchmark/benchmark.h>

using namespace fraclap;

static void BM_RadialBounds(benchmark::State& state) {
  auto p = ProblemParams::make(2, "1", static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(radial_bounds(p, p.N - 1));
}
BENCHMARK(BM_RadialBounds)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_RadialBoundsSerial(benchmark::State& state) {
  auto p = ProblemParams::make(2, "1", static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(radial_bounds_serial(p, p.N - 1));
}
BENCHMARK(BM_RadialBoundsSerial)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_FullSpectrum(benchmark::State& state) {
  auto p = ProblemParams::make(2, "1", 6);
  for (auto _ : state) benchmark::DoNotOptimize(full_spectrum(p, static_cast<int>(state.range(0)), 10));
}
BENCHMARK(BM_FullSpectrum)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_FullSpectrumSerial(benchmark::State& state) {
  auto p = ProblemParams::make(2, "1", 6);
  for (auto _ : state) benchmark::DoNotOptimize(full_spectrum_serial(p, static_cast<int>(state.range(0)), 10));
}
BENCHMARK(BM_FullSpectrumSerial)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
