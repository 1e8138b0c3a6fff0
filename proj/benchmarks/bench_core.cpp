#include <benchmark/benchmark.h>

#include <cmath>

#include "effdim/oracle.hpp"
#include "effdim/posterior.hpp"
#include "effdim/signals.hpp"

namespace {

using namespace effdim;

void BM_Simulate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Signal theta = power_law_signal(1.0, 1.0, n);
  const NoiseLevel eps(0.1);
  std::uint64_t r = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(theta, eps, n, StreamKey{7, r++}));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Simulate)->Range(64, 1 << 14);

void BM_EffectiveDimension(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Signal theta = power_law_signal(1.0, 1.0, n);
  const NoiseLevel eps(0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(effective_dimension(theta, eps, 1.0));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EffectiveDimension)->Range(64, 1 << 14);

void BM_PosteriorPmf(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const NoiseLevel eps(0.1);
  const Observation x =
      simulate(power_law_signal(1.0, 1.0, n), eps, n, StreamKey{3, 0});
  const PriorParams prior(std::exp(2.0) - 1.0, 2.0, eps);
  for (auto _ : state) {
    benchmark::DoNotOptimize(posterior_pmf(x, prior));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PosteriorPmf)->Range(64, 1 << 14);

}  // namespace

BENCHMARK_MAIN();
