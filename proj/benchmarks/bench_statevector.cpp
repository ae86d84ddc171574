#include <benchmark/benchmark.h>

#include "kisim/statevector.hpp"
#include "kisim/transpiler.hpp"

namespace {

void BM_apply_floquet_step(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto spec = kisim::FloquetSpec::with_defaults(n, 2, 0.2);
  const auto step = kisim::build_floquet_step(spec, true);
  kisim::StateVector psi(n);
  for (auto _ : state) {
    psi.apply(step.circuit);
    benchmark::DoNotOptimize(psi.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<long>(step.circuit.size()));
}
BENCHMARK(BM_apply_floquet_step)->Arg(8)->Arg(10)->Arg(12);

void BM_z_expectations(benchmark::State& state) {
  kisim::StateVector psi(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(psi.z_expectations());
  }
}
BENCHMARK(BM_z_expectations)->Arg(10)->Arg(12);

}  // namespace
