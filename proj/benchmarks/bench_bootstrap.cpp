#include <benchmark/benchmark.h>

#include <random>

#include "kisim/bootstrap.hpp"

namespace {

void BM_bootstrap(benchmark::State& state) {
  std::mt19937 gen(5);
  std::normal_distribution<double> dist(0.5, 0.1);
  std::vector<double> values(1 << 13);
  for (double& v : values) v = dist(gen);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        kisim::bootstrap(values, static_cast<std::size_t>(state.range(0)), 3));
  }
}
BENCHMARK(BM_bootstrap)->Arg(100)->Arg(1000);

}  // namespace
