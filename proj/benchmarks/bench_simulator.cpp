#include <benchmark/benchmark.h>

#include "qdcc/instances.hpp"
#include "qdcc/simulator.hpp"

using namespace qdcc;

static void BM_ApplyCost(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = all_negative(n);
  const auto diag = sim::cost_diagonal(g, n);
  auto s = sim::uniform_state(n, n);
  for (auto _ : state) {
    sim::apply_cost(s, diag, 0.31);
    benchmark::DoNotOptimize(s.amps.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(s.dim()));
}
BENCHMARK(BM_ApplyCost)->DenseRange(4, 7);

static void BM_ApplyMixer(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto s = sim::uniform_state(n, n);
  const sim::MixerSpec spec{sim::MixerVariant::standard, n, 1};
  for (auto _ : state) {
    sim::apply_mixer(s, spec, 0.17);
    benchmark::DoNotOptimize(s.amps.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(s.dim()));
}
BENCHMARK(BM_ApplyMixer)->DenseRange(4, 7);

static void BM_DepthTwoExpectation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = all_negative(n);
  const auto diag = sim::cost_diagonal(g, n);
  const sim::MixerSpec spec{sim::MixerVariant::standard, n, 1};
  sim::QaoaParams p;
  p.gammas = {0.4, 0.2};
  p.betas = {0.3, 0.1};
  for (auto _ : state) {
    const auto s = sim::run_qaoa(g, n, p, spec);
    benchmark::DoNotOptimize(sim::expectation(s, diag));
  }
}
BENCHMARK(BM_DepthTwoExpectation)->DenseRange(4, 6);

static void BM_Oracle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(3);
  ProblemGraph g;
  g.n_nodes = n;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      g.edges.push_back({u, v, rng.uniform() < 0.5 ? 1 : -1});
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_force_maxagree(g).c_star);
  }
}
BENCHMARK(BM_Oracle)->DenseRange(5, 8);

BENCHMARK_MAIN();
