#include <benchmark/benchmark.h>

#include "kisim/transpiler.hpp"

namespace {

void BM_build_floquet_step(benchmark::State& state) {
  const auto spec =
      kisim::FloquetSpec::with_defaults(18, static_cast<int>(state.range(0)),
                                        0.2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kisim::build_floquet_step(spec, true));
  }
}
BENCHMARK(BM_build_floquet_step)->Arg(1)->Arg(2)->Arg(3);

void BM_critical_path(benchmark::State& state) {
  const auto spec = kisim::FloquetSpec::with_defaults(18, 2, 0.2);
  const auto step = kisim::build_floquet_step(spec, false);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kisim::critical_path_counts(step.circuit));
  }
}
BENCHMARK(BM_critical_path);

}  // namespace
