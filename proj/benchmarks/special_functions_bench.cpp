#include <benchmark/benchmark.h>

#include "hbm/special_functions.hpp"

namespace {

void BM_Hyp2F1(benchmark::State& state) {
  const double z = -static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hbm::hyp2f1(hbm::Hyp2F1Args{1.5, 2.25, 3.0, z}));
  }
}
BENCHMARK(BM_Hyp2F1)->Arg(10)->Arg(50)->Arg(99)->Arg(100);

void BM_StudentQuantile(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(hbm::student_quantile(0.999, 4.0));
  }
}
BENCHMARK(BM_StudentQuantile);

}  // namespace
