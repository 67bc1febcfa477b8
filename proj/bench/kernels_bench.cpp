#include <benchmark/benchmark.h>

#include "bphz/roughsim/convolution.hpp"
#include "bphz/roughsim/noise.hpp"

namespace rs = bphz::roughsim;

namespace {

void fbm(benchmark::State& state, rs::Backend backend) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const double dt = 1.0 / static_cast<double>(n);
  const auto dw = rs::brownian_increments(7, 0, n, dt);
  for (auto _ : state) benchmark::DoNotOptimize(rs::fbm_rl(dw, 0.3, dt, backend));
  state.SetComplexityN(state.range(0));
}

void mollify(benchmark::State& state, rs::Backend backend) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const double dt = 1.0 / static_cast<double>(n);
  const auto w = rs::sample_brownian(7, 0, n, dt);
  const auto weights = rs::Mollifier().weights(1.0 / 32, dt);
  for (auto _ : state) benchmark::DoNotOptimize(rs::mollify(w, weights, backend));
}

}  // namespace

BENCHMARK_CAPTURE(fbm, serial, rs::Backend::Serial)->RangeMultiplier(4)->Range(1 << 8, 1 << 12);
BENCHMARK_CAPTURE(fbm, openmp, rs::Backend::OpenMP)->RangeMultiplier(4)->Range(1 << 8, 1 << 12);
BENCHMARK_CAPTURE(fbm, fft, rs::Backend::Fft)->RangeMultiplier(4)->Range(1 << 8, 1 << 12);
BENCHMARK_CAPTURE(mollify, serial, rs::Backend::Serial)->Arg(1 << 12);
BENCHMARK_CAPTURE(mollify, openmp, rs::Backend::OpenMP)->Arg(1 << 12);
BENCHMARK_CAPTURE(mollify, fft, rs::Backend::Fft)->Arg(1 << 12);

BENCHMARK_MAIN();
