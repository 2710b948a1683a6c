#include <benchmark/benchmark.h>

#include <omp.h>

#include "lrsim/analytic.hpp"
#include "lrsim/engine.hpp"

namespace {

lrsim::ExperimentConfig bench_config(std::uint64_t pairs) {
  lrsim::ExperimentConfig c;
  c.source.hv_model = lrsim::HiddenVariableModel::uniform();
  c.setting_a = lrsim::Angle(0.3);
  c.n_pairs = pairs;
  c.retain_events = false;
  return c;
}

void BM_RunReference(benchmark::State& state) {
  const auto c = bench_config(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lrsim::run_reference(c).counts.n_pp);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_RunParallel(benchmark::State& state) {
  const auto c = bench_config(static_cast<std::uint64_t>(state.range(0)));
  omp_set_num_threads(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(lrsim::run(c).counts.n_pp);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_GeneralCoincidenceThreshold(benchmark::State& state) {
  const auto model = lrsim::HiddenVariableModel::uniform();
  const auto r = lrsim::DetectorResponse::threshold_at(0.5);
  double a = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lrsim::general_coincidence(model, lrsim::Angle(a), lrsim::Angle(0.2), r, r));
    a += 0.01;
  }
}

void BM_SmearedCoincidence(benchmark::State& state) {
  const double sigma = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state)
    benchmark::DoNotOptimize(lrsim::smeared_coincidence(sigma, lrsim::Angle(0.4), lrsim::Angle(0.1)));
}

}  // namespace

BENCHMARK(BM_RunReference)->Arg(1 << 18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunParallel)->Args({1 << 18, 1})->Args({1 << 18, 2})->Args({1 << 18, 4})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GeneralCoincidenceThreshold)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SmearedCoincidence)->Arg(5)->Arg(50)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
