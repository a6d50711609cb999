#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qdcc/noise.hpp"

using namespace qdcc;
using sim::cxd;

TEST_SUITE("noise") {

TEST_CASE("weyl set at d=2 is the pauli group representatives") {
  const auto ws = noise::weyl_set(2);
  REQUIRE(ws.unitaries.size() == 4);
  Eigen::Matrix2cd x, z;
  x << 0, 1, 1, 0;
  z << 1, 0, 0, -1;
  CHECK((ws.unitaries[0] - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((ws.unitaries[1] - z).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((ws.unitaries[2] - x).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((ws.unitaries[3] - Eigen::Matrix2cd(x * z)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("weyl set properties") {
  for (int d : {2, 3, 5}) {
    const auto ws = noise::weyl_set(d);
    CHECK(ws.unitaries.size() == static_cast<std::size_t>(d) * d);
    for (std::size_t i = 0; i < ws.unitaries.size(); ++i) {
      const auto& u = ws.unitaries[i];
      CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() <
            1e-12);
      for (std::size_t j = i + 1; j < ws.unitaries.size(); ++j)
        CHECK((u - ws.unitaries[j]).cwiseAbs().maxCoeff() > 1e-9);
    }
  }
}

TEST_CASE("error channel basics") {
  const auto ws = noise::weyl_set(2);
  const std::vector<Edge> pair = {{0, 1, 1}};
  Rng rng(3);
  auto s = sim::uniform_state(2, 2);
  auto before = s.amps;
  noise::apply_error_channel(s, pair, 0.0, ws, rng);
  CHECK(s.amps == before);

  // at p2 = 1 the identity pair is excluded: a generic state always moves
  Rng srng(11);
  sim::StateVector generic;
  generic.d = 2;
  generic.n = 2;
  double norm = 0;
  for (int i = 0; i < 4; ++i) {
    generic.amps.push_back(cxd(srng.uniform(0.2, 1.0), srng.uniform(-1.0, 1.0)));
    norm += std::norm(generic.amps.back());
  }
  for (auto& a : generic.amps) a /= std::sqrt(norm);
  for (int rep = 0; rep < 200; ++rep) {
    Rng r(1000 + rep);
    auto t = generic;
    noise::apply_error_channel(t, pair, 1.0, ws, r);
    CHECK(std::abs(t.norm() - 1.0) < 1e-12);
    cxd overlap = 0;
    for (int i = 0; i < 4; ++i) overlap += std::conj(generic.amps[i]) * t.amps[i];
    CHECK(std::abs(overlap) < 1.0 - 1e-6);
  }
}

TEST_CASE("noise-free limit matches the clean circuit") {
  ProblemGraph g;
  g.n_nodes = 3;
  g.edges = {{0, 1, -1}, {0, 2, 1}, {1, 2, -1}};
  const auto oracle = brute_force_maxagree(g);
  sim::QaoaParams params;
  params.gammas = {0.7};
  params.betas = {0.4};
  sim::MixerSpec spec{sim::MixerVariant::standard, 3, 1};
  const auto s = sim::run_qaoa(g, 3, params, spec);
  const auto diag = sim::cost_diagonal(g, 3);
  const double clean = sim::approx_ratio(sim::expectation(s, diag), 3, oracle.c_star);

  noise::NoiseConfig cfg{0.0, 8, 5};
  const auto res = noise::run_noisy(g, 3, params, spec, oracle.c_star, cfg);
  CHECK(res.mean_ratio == doctest::Approx(clean).epsilon(1e-9));
  CHECK(res.stderr_ratio < 1e-12);
}

TEST_CASE("single-cluster registers ignore the channel") {
  const auto g = all_negative(3);
  const auto oracle = brute_force_maxagree(g);
  sim::QaoaParams params;
  sim::MixerSpec spec{sim::MixerVariant::standard, 1, 1};
  for (const double p2 : {0.0, 0.5, 1.0}) {
    noise::NoiseConfig cfg{p2, 16, 7};
    const auto res = noise::run_noisy(g, 1, params, spec, oracle.c_star, cfg);
    CHECK(res.mean_ratio ==
          sim::approx_ratio(g.sum_weights(), g.num_edges(), oracle.c_star));
    CHECK(res.stderr_ratio == 0.0);
  }
}

TEST_CASE("full noise approaches the random-guess baseline") {
  const auto g = all_negative(3);
  const auto oracle = brute_force_maxagree(g);
  // optimized angles are irrelevant at p2=1; use a fixed reasonable pair
  sim::QaoaParams params;
  params.gammas = {0.8};
  params.betas = {0.5};
  sim::MixerSpec spec{sim::MixerVariant::standard, 3, 1};
  noise::NoiseConfig cfg{1.0, 400, 21};
  const auto res = noise::run_noisy(g, 3, params, spec, oracle.c_star, cfg);
  const double baseline =
      sim::approx_ratio(g.sum_weights() * (2.0 / 3 - 1.0), g.num_edges(), oracle.c_star);
  CHECK(std::abs(res.mean_ratio - baseline) <= 3.0 * res.stderr_ratio + 1e-3);
}

TEST_CASE("mean ratio is monotone in p2 on paired seeds") {
  ProblemGraph g;
  g.n_nodes = 4;
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) g.edges.push_back({u, v, (u + v) % 2 ? 1 : -1});
  const auto oracle = brute_force_maxagree(g);
  sim::QaoaParams params;
  params.gammas = {0.6};
  params.betas = {0.3};
  sim::MixerSpec spec{sim::MixerVariant::standard, 4, 1};
  double prev = 1e9;
  double prev_se = 0;
  for (const double p2 : {0.0, 0.01, 0.05, 0.2, 0.6, 1.0}) {
    noise::NoiseConfig cfg{p2, 300, 99};  // same seed: coupled streams
    const auto res = noise::run_noisy(g, 4, params, spec, oracle.c_star, cfg);
    CHECK(res.mean_ratio <= prev + 3.0 * (res.stderr_ratio + prev_se) + 1e-9);
    prev = res.mean_ratio;
    prev_se = res.stderr_ratio;
  }
}

TEST_CASE("weyl twirl symmetry of the sampled ensemble") {
  // at p2=1 the outcome histogram is invariant under relabeling by X on
  // either qudit (left multiplication by a Weyl shift)
  const auto ws = noise::weyl_set(2);
  const std::vector<Edge> pair = {{0, 1, 1}};
  Rng srng(13);
  sim::StateVector psi;
  psi.d = 2;
  psi.n = 2;
  double norm = 0;
  for (int i = 0; i < 4; ++i) {
    psi.amps.push_back(cxd(srng.uniform(-1, 1), srng.uniform(-1, 1)));
    norm += std::norm(psi.amps.back());
  }
  for (auto& a : psi.amps) a /= std::sqrt(norm);

  const int kTraj = 4000;
  std::array<double, 4> hist{};
  Rng rng(77);
  for (int t = 0; t < kTraj; ++t) {
    auto s = psi;
    noise::apply_error_channel(s, pair, 1.0, ws, rng);
    for (int z = 0; z < 4; ++z) hist[z] += std::norm(s.amps[z]);
  }
  // X on qudit 0 maps outcome (a,b) -> (1-a,b); X on qudit 1 likewise
  for (const auto& [za, zb] : {std::pair{0, 2}, std::pair{1, 3}}) {
    const double e = 0.5 * (hist[za] + hist[zb]);
    const double chi2 = (hist[za] - e) * (hist[za] - e) / e +
                        (hist[zb] - e) * (hist[zb] - e) / e;
    CHECK(chi2 < 20.0);  // ~1e-4 tail of chi-square with 1 dof
  }
  for (const auto& [za, zb] : {std::pair{0, 1}, std::pair{2, 3}}) {
    const double e = 0.5 * (hist[za] + hist[zb]);
    const double chi2 = (hist[za] - e) * (hist[za] - e) / e +
                        (hist[zb] - e) * (hist[zb] - e) / e;
    CHECK(chi2 < 20.0);
  }
}

TEST_CASE("threshold interpolation on a synthetic linear curve") {
  // ratio(p2) = r0 - (r0 - r_rand) * p2 crosses the halfway mark at 0.5
  const double r0 = 0.95, rr = 0.55;
  std::vector<double> grid, curve;
  for (int i = 0; i <= 10; ++i) {
    grid.push_back(0.1 * i + 1e-12);
    curve.push_back(r0 - (r0 - rr) * (0.1 * i));
  }
  const double target = 0.5 * (r0 + rr);
  // replicate the scan's crossing rule
  double p2th = -1;
  for (std::size_t gi = 0; gi < curve.size(); ++gi) {
    if (curve[gi] > target) continue;
    const double x0 = std::log(grid[gi - 1]), x1 = std::log(grid[gi]);
    const double t = (target - curve[gi - 1]) / (curve[gi] - curve[gi - 1]);
    p2th = std::exp(x0 + t * (x1 - x0));
    break;
  }
  CHECK(p2th == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("kappa fit") {
  const std::vector<double> p2 = {0.1, 0.01};
  const std::vector<double> g = {8.4, 84.0};
  const auto [kappa, r2] = noise::fit_kappa(p2, g);
  CHECK(kappa == doctest::Approx(0.84).epsilon(1e-12));
  CHECK(r2 == doctest::Approx(1.0).epsilon(1e-9));

  // any monotone-decreasing family fits with a positive kappa
  const std::vector<double> p2b = {0.2, 0.05, 0.01};
  const std::vector<double> gb = {3.0, 11.0, 70.0};
  const auto [kb, r2b] = noise::fit_kappa(p2b, gb);
  CHECK(kb > 0.0);
}

TEST_CASE("scaling estimate reproduces the reference sizes") {
  const auto a = noise::scaling_estimate(1e-3, 8, 0.84, 1);
  CHECK(a.p2_effective == doctest::Approx(0.014));
  CHECK(a.max_n == 13);
  CHECK(noise::scaling_estimate(1e-4, 8, 0.84, 1).max_n == 41);
  CHECK(noise::scaling_estimate(1e-5, 8, 0.84, 1).max_n == 130);
  CHECK_THROWS_AS(noise::scaling_estimate(0.0, 8, 0.84, 1), std::invalid_argument);
}

}  // TEST_SUITE
