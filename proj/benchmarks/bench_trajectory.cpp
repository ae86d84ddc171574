#include <benchmark/benchmark.h>

#include "kisim/trajectory.hpp"

namespace {

void BM_noisy_trajectory(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto spec = kisim::FloquetSpec::with_defaults(n, 2, 0.2);
  const auto step = kisim::build_floquet_step(spec, true);
  kisim::NoiseModel model;
  model.p2 = 5e-3;
  model.p1 = 2e-4;
  std::uint32_t shot = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        kisim::run_trajectory(step.circuit, model, 7, shot++));
  }
}
BENCHMARK(BM_noisy_trajectory)->Arg(8)->Arg(10);

void BM_sample_shots(benchmark::State& state) {
  const auto spec = kisim::FloquetSpec::with_defaults(10, 1, 0.2);
  const auto step = kisim::build_floquet_step(spec, true);
  kisim::NoiseModel model;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kisim::sample_shots(
        step.circuit, model, 256, 11, step.report.relabel, 1));
  }
  state.SetItemsProcessed(state.iterations() * 256);
}
BENCHMARK(BM_sample_shots);

}  // namespace
