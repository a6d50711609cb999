#include <benchmark/benchmark.h>

#include "qdcc/bounds.hpp"
#include "qdcc/gates.hpp"

static void BM_CpSymmetric(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdcc::gates::cp_symmetric(d, 0.7).m.data());
  }
}
BENCHMARK(BM_CpSymmetric)->DenseRange(2, 7);

static void BM_CpChain(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdcc::gates::cp_chain(d, 0.7).m.data());
  }
}
BENCHMARK(BM_CpChain)->DenseRange(2, 7);

static void BM_FLambda(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto cat = qdcc::bounds::enumerate_subgraphs();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdcc::bounds::f_lambda(cat[i % cat.size()], d, 0.4, 0.2));
    ++i;
  }
}
BENCHMARK(BM_FLambda)->DenseRange(2, 4);
