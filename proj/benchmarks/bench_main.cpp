#include <benchmark/benchmark.h>

#include "tdesign/bitseq.hpp"
#include "tdesign/circuits.hpp"
#include "tdesign/exact_analysis.hpp"
#include "tdesign/moments.hpp"
#include "tdesign/montecarlo.hpp"

namespace tdesign {
namespace {

void BM_EnumerateClasses(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int t = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_classes(n, t));
}
BENCHMARK(BM_EnumerateClasses)->Args({4, 3})->Args({4, 4})->Args({6, 3})->Unit(benchmark::kMillisecond);

void BM_EtaExact(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int t = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(eta_exact(n, t));
}
BENCHMARK(BM_EtaExact)->Args({14, 2})->Args({14, 8})->Args({20, 16});

void BM_MinimalExactR(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(minimal_exact_r(4, t, DesignSearch::kExhaustive));
}
BENCHMARK(BM_MinimalExactR)->Arg(4)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_SymmetricAmplitudes(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ClassBasis basis(n, 2);
  const auto s = plus_state(n);
  for (auto _ : state) benchmark::DoNotOptimize(basis.amplitudes(s.amplitudes));
}
BENCHMARK(BM_SymmetricAmplitudes)->Arg(4)->Arg(6)->Arg(8);

void BM_EstimateMoment(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto spec = make_circuit_spec(n, 2);
  const StateSampler sampler = [&](Rng& rng) {
    auto s = plus_state(n);
    apply_diagonal(s, sample_phase_random(spec, rng));
    apply_layer(s, sample_local_random_layer(n, LayerParity::kEven, rng));
    return s;
  };
  for (auto _ : state) benchmark::DoNotOptimize(estimate_moment(sampler, n, 2, 100, 1));
}
BENCHMARK(BM_EstimateMoment)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_GateCount(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gate_count(64, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_GateCount)->Arg(2)->Arg(8);

}  // namespace
}  // namespace tdesign

BENCHMARK_MAIN();
