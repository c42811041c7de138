// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <numeric>
#include <vector>

#include "zeno/design.hpp"
#include "zeno/enhancement.hpp"

using namespace zeno;

namespace {

const Vec3 kDk{600.0, 500.0, 400.0};

void BM_RandomPhaseSum(benchmark::State& state) {
  const auto S = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(random_phase_sum(S, kDk, 1.0, 2024, 64).mean);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(S) * 64);
}

void BM_RandomPhaseSumSerial(benchmark::State& state) {
  const auto S = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(random_phase_sum_serial(S, kDk, 1.0, 2024, 64).mean);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(S) * 64);
}

void BM_ErrorCurve(benchmark::State& state) {
  const auto samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(error_curve(1000.0, 1000, 0.0, 0.14, samples).size());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(samples));
}

void BM_ErrorCurveSerial(benchmark::State& state) {
  const auto samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(error_curve_serial(1000.0, 1000, 0.0, 0.14, samples).size());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(samples));
}

std::vector<std::uint64_t> sweep_ns(std::int64_t n) {
  std::vector<std::uint64_t> ns(static_cast<std::size_t>(n));
  std::iota(ns.begin(), ns.end(), std::uint64_t{1});
  return ns;
}

void BM_KappaSweep(benchmark::State& state) {
  const auto ns = sweep_ns(state.range(0));
  DesignConfig cfg;
  cfg.rule = RateRule::minimax_scale;
  for (auto _ : state) benchmark::DoNotOptimize(kappa_sweep(0.25, ns, cfg).size());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_KappaSweepSerial(benchmark::State& state) {
  const auto ns = sweep_ns(state.range(0));
  DesignConfig cfg;
  cfg.rule = RateRule::minimax_scale;
  for (auto _ : state) benchmark::DoNotOptimize(kappa_sweep_serial(0.25, ns, cfg).size());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_RandomPhaseSum)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RandomPhaseSumSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ErrorCurve)->Arg(281)->Arg(4096)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ErrorCurveSerial)->Arg(281)->Arg(4096)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_KappaSweep)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_KappaSweepSerial)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
