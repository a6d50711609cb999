#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>

#include "doctest.h"
#include "qdcc/strategies.hpp"

using namespace qdcc;
using namespace qdcc::strategies;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("strategies") {

TEST_CASE("nelder-mead on quadratics and sin") {
  OptimizerConfig cfg;
  cfg.max_evals = 400;
  cfg.tolerance = 1e-12;
  cfg.init_simplex_scale = 0.5;

  const auto r1 = nelder_mead(
      [](std::span<const double> x) { return -(x[0] - 1.0) * (x[0] - 1.0); },
      std::vector<double>{0.0}, cfg);
  CHECK(std::abs(r1.x[0] - 1.0) < 1e-4);
  CHECK(r1.evals <= cfg.max_evals);
  CHECK(r1.f >= -(0.0 - 1.0) * (0.0 - 1.0));  // no worse than the start

  const auto r2 = nelder_mead(
      [](std::span<const double> x) { return std::sin(x[0]); },
      std::vector<double>{1.0}, cfg);
  CHECK(std::abs(r2.x[0] - kPi / 2) < 1e-3);

  const auto r3 = nelder_mead(
      [](std::span<const double> x) {
        return -((x[0] - 0.3) * (x[0] - 0.3) + (x[1] + 0.7) * (x[1] + 0.7));
      },
      std::vector<double>{2.0, 2.0}, cfg);
  CHECK(std::abs(r3.x[0] - 0.3) < 1e-4);
  CHECK(std::abs(r3.x[1] + 0.7) < 1e-4);
}

TEST_CASE("nelder-mead rejects NaN objectives") {
  OptimizerConfig cfg;
  CHECK_THROWS_AS(
      nelder_mead([](std::span<const double>) { return std::nan(""); },
                  std::vector<double>{0.0}, cfg),
      std::runtime_error);
}

TEST_CASE("nelder-mead is deterministic") {
  OptimizerConfig cfg;
  cfg.max_evals = 200;
  auto obj = [](std::span<const double> x) {
    return -(x[0] * x[0] + 0.5 * std::sin(3 * x[0]) + x[1] * x[1]);
  };
  const auto a = nelder_mead(obj, std::vector<double>{1.0, -1.0}, cfg);
  const auto b = nelder_mead(obj, std::vector<double>{1.0, -1.0}, cfg);
  CHECK(a.x == b.x);
  CHECK(a.f == b.f);
  CHECK(a.evals == b.evals);
}

TEST_CASE("warm start caches and reproduces its objective") {
  WarmStartCache cache;
  OptimizerConfig cfg;
  cfg.max_evals = 200;
  cfg.restarts = 3;
  cfg.seed = 4;
  sim::MixerSpec spec{sim::MixerVariant::standard, 4, 1};
  const auto params = warm_start(4, 4, 1, spec, cfg, &cache);
  CHECK(cache.size() == 1);

  const auto hit = cache.lookup(4, 4, 1, sim::mixer_name(spec));
  REQUIRE(hit.has_value());
  const auto g = all_negative(4);
  const auto diag = sim::cost_diagonal(g, 4);
  const auto s = sim::run_qaoa(g, 4, params, spec);
  CHECK(sim::expectation(s, diag) == doctest::Approx(hit->f).epsilon(1e-9));

  // cache hit: identical parameters, no new entry
  const auto again = warm_start(4, 4, 1, spec, cfg, &cache);
  CHECK(again.gammas == params.gammas);
  CHECK(again.betas == params.betas);
  CHECK(cache.size() == 1);

  // warm-started ratio beats the random-guess baseline on the reference instance
  const auto oracle = brute_force_maxagree(g);
  const double warm_ratio =
      sim::approx_ratio(hit->f, g.num_edges(), oracle.c_star);
  const double rand_ratio = sim::approx_ratio(
      sim::expectation(sim::uniform_state(4, 4), diag), g.num_edges(), oracle.c_star);
  CHECK(warm_ratio >= rand_ratio);
}

TEST_CASE("warm start cache persists") {
  const std::string path = "warm_cache_test.json";
  std::filesystem::remove(path);
  {
    WarmStartCache cache(path);
    OptimizerConfig cfg;
    cfg.max_evals = 120;
    cfg.restarts = 2;
    warm_start(3, 3, 1, {sim::MixerVariant::standard, 3, 1}, cfg, &cache);
    cache.save();
  }
  WarmStartCache reloaded(path);
  CHECK(reloaded.size() == 1);
  CHECK(reloaded.lookup(3, 3, 1, "standard_r1").has_value());
  std::filesystem::remove(path);
}

TEST_CASE("solve_instance on the all-plus complete graph") {
  ProblemGraph g;
  g.n_nodes = 4;
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) g.edges.push_back({u, v, 1});
  OptimizerConfig cfg;
  cfg.max_evals = 100;
  cfg.restarts = 2;
  const auto rep = solve_instance(g, 1, cfg, {}, nullptr);
  CHECK(rep.best_ratio == 1.0);
  CHECK(rep.best_d == 1);  // ties resolve toward the cheapest circuit
}

TEST_CASE("solve_instance reaches the grid optimum on the all-minus triangle") {
  const auto g = all_negative(3);
  const auto oracle = brute_force_maxagree(g);
  OptimizerConfig cfg;
  cfg.max_evals = 250;
  cfg.restarts = 4;
  SolveOptions so;
  so.seed = 5;
  const auto rep = solve_instance(g, 1, cfg, so, nullptr);
  // dense-grid value at d = 3: F = 2.3306, ratio 0.8884; the optimizer must
  // match the grid optimum
  CHECK(rep.best_ratio >= 0.88);

  const auto diag = sim::cost_diagonal(g, 3);
  double grid_best = -1e9;
  for (int i = 0; i < 48; ++i)
    for (int j = 0; j < 48; ++j) {
      sim::QaoaParams p;
      p.gammas = {2 * kPi * i / 48};
      p.betas = {2 * kPi * j / 48};
      const auto s = sim::run_qaoa(g, 3, p, {sim::MixerVariant::standard, 3, 1});
      grid_best = std::max(grid_best, sim::expectation(s, diag));
    }
  const double grid_ratio = sim::approx_ratio(grid_best, 3, oracle.c_star);
  CHECK(rep.best_ratio >= grid_ratio - 1e-3);
}

TEST_CASE("report invariants") {
  Rng rng(14);
  OptimizerConfig cfg;
  cfg.max_evals = 80;
  cfg.restarts = 2;
  for (int rep = 0; rep < 4; ++rep) {
    ProblemGraph g;
    g.n_nodes = 4;
    do {
      g.edges.clear();
      for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v)
          if (rng.uniform() < 0.7)
            g.edges.push_back({u, v, rng.uniform() < 0.5 ? 1 : -1});
    } while (g.edges.empty());
    SolveOptions so;
    so.seed = rng.next();
    const auto report = solve_instance(g, 1, cfg, so, nullptr);
    CHECK(report.best_ratio >= 0.0);
    CHECK(report.best_ratio <= 1.0 + 1e-12);
    // the d-loop result dominates every single-d result
    for (const auto& [d, pd] : report.per_d) CHECK(report.best_ratio >= pd.ratio - 1e-12);
  }
}

TEST_CASE("restarts never lower the best ratio") {
  ProblemGraph g;
  g.n_nodes = 4;
  g.edges = {{0, 1, 1}, {0, 2, -1}, {0, 3, 1}, {1, 2, -1}, {2, 3, -1}};
  OptimizerConfig one;
  one.max_evals = 90;
  one.restarts = 1;
  OptimizerConfig five = one;
  five.restarts = 5;
  SolveOptions so;
  so.use_warm_start = false;
  so.seed = 77;
  const auto r1 = solve_instance(g, 1, one, so, nullptr);
  const auto r5 = solve_instance(g, 1, five, so, nullptr);
  CHECK(r5.best_ratio >= r1.best_ratio - 1e-12);
}

TEST_CASE("depth improves the dataset mean") {
  const auto ds = generate_dataset(DatasetKind::complete, 4, 10, 91);
  WarmStartCache cache;
  OptimizerConfig cfg;
  cfg.max_evals = 150;
  cfg.restarts = 3;
  double mean[3] = {0, 0, 0};
  for (int p = 1; p <= 2; ++p) {
    for (std::size_t i = 0; i < ds.instances.size(); ++i) {
      SolveOptions so;
      so.seed = 100 + i;
      mean[p] += solve_instance(ds.instances[i], p, cfg, so, &cache).best_ratio;
    }
    mean[p] /= ds.instances.size();
  }
  CHECK(mean[2] >= mean[1] - 0.01);
}

TEST_CASE("concentration report degenerate cases") {
  OptimizerConfig cfg;
  cfg.max_evals = 150;
  cfg.restarts = 2;
  WarmStartCache cache;

  Dataset one;
  one.kind = DatasetKind::complete;
  one.instances.push_back(all_negative(4));
  CHECK(concentration_report(4, 4, one, cfg, &cache).box_fraction == 0.0);

  Dataset twin = one;
  twin.instances.push_back(all_negative(4));
  CHECK(concentration_report(4, 4, twin, cfg, &cache).box_fraction == 0.0);
}

TEST_CASE("angle wrapping") {
  CHECK(wrap_angle(0.0) == 0.0);
  CHECK(wrap_angle(2 * kPi) == doctest::Approx(0.0));
  CHECK(wrap_angle(-0.1) == doctest::Approx(2 * kPi - 0.1));
  CHECK(wrap_angle(7.0) == doctest::Approx(7.0 - 2 * kPi));
}

}  // TEST_SUITE
