#include "qdcc/noise.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qdcc/parallel.hpp"

namespace qdcc::noise {

WeylSet weyl_set(int d) {
  if (d < 2) throw std::invalid_argument("weyl_set: d >= 2 required");
  WeylSet ws;
  ws.d = d;
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < d; ++i) x((i + 1) % d, i) = 1.0;
  Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < d; ++i)
    z(i, i) = std::polar(1.0, 2.0 * std::numbers::pi * i / d);
  Eigen::MatrixXcd xr = Eigen::MatrixXcd::Identity(d, d);
  for (int r = 0; r < d; ++r) {
    Eigen::MatrixXcd m = xr;
    for (int s = 0; s < d; ++s) {
      ws.unitaries.push_back(m);
      m = m * z;
    }
    xr = x * xr;
  }
  return ws;
}

void apply_error_channel(sim::StateVector& s, std::span<const Edge> pairs, double p2,
                         const WeylSet& weyl, Rng& rng) {
  const int d = s.d;
  if (d == 1) return;
  if (weyl.d != d) throw std::invalid_argument("apply_error_channel: Weyl set d mismatch");
  const std::uint64_t d2 = static_cast<std::uint64_t>(d) * d;
  const std::uint64_t combinations = d2 * d2 - 1;
  for (const auto& e : pairs) {
    // consume the stream identically for every p2 (couples runs across noise levels)
    const double u = rng.uniform();
    const std::uint64_t k = 1 + rng.below(combinations);
    if (u >= p2) continue;
    const std::uint64_t a = k / d2;
    const std::uint64_t b = k % d2;
    if (a != 0) sim::apply_single_qudit(s, weyl.unitaries[a], e.u);
    if (b != 0) sim::apply_single_qudit(s, weyl.unitaries[b], e.v);
  }
}

NoisyResult run_noisy(const ProblemGraph& g, int d, const sim::QaoaParams& params,
                      const sim::MixerSpec& spec, long long c_star,
                      const NoiseConfig& cfg) {
  if (cfg.trajectories < 1)
    throw std::invalid_argument("run_noisy: trajectories >= 1 required");
  const int e = g.num_edges();

  if (d == 1) {
    // single-cluster register: no pairs are acted on, the outcome is exact
    const double ratio = sim::approx_ratio(g.sum_weights(), e, c_star);
    return {ratio, 0.0, cfg.trajectories};
  }

  const sim::CostDiagonal diag = sim::cost_diagonal(g, d);
  const WeylSet weyl = weyl_set(d);
  // Welford accumulation keeps the variance exact when trajectories coincide
  double mean = 0.0, m2 = 0.0;
  for (int t = 0; t < cfg.trajectories; ++t) {
    Rng rng(Rng::derive(cfg.seed, t));
    sim::StateVector s = sim::uniform_state(g.n_nodes, d);
    for (int k = 0; k < params.depth(); ++k) {
      sim::apply_cost(s, diag, params.gammas[k]);
      apply_error_channel(s, g.edges, cfg.p2, weyl, rng);
      sim::apply_mixer(s, spec, params.betas[k]);
    }
    const double ratio = sim::approx_ratio(sim::expectation(s, diag), e, c_star);
    const double delta = ratio - mean;
    mean += delta / (t + 1);
    m2 += delta * (ratio - mean);
  }
  NoisyResult res;
  res.trajectories = cfg.trajectories;
  res.mean_ratio = mean;
  if (cfg.trajectories > 1)
    res.stderr_ratio =
        std::sqrt(std::max(0.0, m2 / (cfg.trajectories - 1)) / cfg.trajectories);
  return res;
}

ThresholdScanConfig::ThresholdScanConfig() {
  // logspace 1e-4 .. 1, dense enough to bracket the knee
  constexpr int kPoints = 13;
  for (int i = 0; i < kPoints; ++i)
    p2_grid.push_back(std::pow(10.0, -4.0 + 4.0 * i / (kPoints - 1)));
}

ThresholdResult threshold_scan(std::span<const Dataset> datasets,
                               std::span<const int> depths,
                               const ThresholdScanConfig& cfg) {
  if (cfg.p2_grid.empty()) throw std::invalid_argument("threshold_scan: empty grid");
  ThresholdResult result;

  for (const auto& ds : datasets) {
    if (ds.instances.empty()) continue;
    const int n = ds.instances.front().n_nodes;
    for (const int p : depths) {
      // noise-free optimized parameters per instance
      struct Opt {
        int d;
        sim::QaoaParams params;
        long long c_star;
        double ratio0;
        double ratio_rand;
      };
      std::vector<Opt> opts(ds.instances.size());
      parallel_for(ds.instances.size(), [&](std::size_t i) {
        const auto& g = ds.instances[i];
        strategies::SolveOptions so;
        so.mixer = cfg.mixer;
        so.seed = Rng::derive(cfg.seed, 0xA11 + i);
        const auto rep =
            strategies::solve_instance(g, p, cfg.optimizer, so, cfg.cache);
        const auto oracle = brute_force_maxagree(g);
        Opt o;
        o.d = rep.best_d;
        o.params = rep.best_params;
        o.c_star = oracle.c_star;
        o.ratio0 = rep.best_ratio;
        // random-guess baseline at the chosen d: uniform-state expectation
        const double f_rand =
            o.d == 1 ? g.sum_weights()
                     : g.sum_weights() * (2.0 / o.d - 1.0);
        o.ratio_rand = sim::approx_ratio(f_rand, g.num_edges(), o.c_star);
        opts[i] = std::move(o);
      });

      double mean0 = 0.0, mean_rand = 0.0;
      for (const auto& o : opts) {
        mean0 += o.ratio0;
        mean_rand += o.ratio_rand;
      }
      mean0 /= opts.size();
      mean_rand /= opts.size();

      std::vector<double> curve(cfg.p2_grid.size(), 0.0);
      for (std::size_t gi = 0; gi < cfg.p2_grid.size(); ++gi) {
        std::vector<double> inst_means(opts.size());
        parallel_for(opts.size(), [&](std::size_t i) {
          NoiseConfig nc;
          nc.p2 = cfg.p2_grid[gi];
          nc.trajectories = cfg.trajectories;
          nc.seed = Rng::derive(cfg.seed, 0xBEE5 + i);
          sim::MixerSpec spec{cfg.mixer, opts[i].d, 1};
          inst_means[i] = run_noisy(ds.instances[i], opts[i].d, opts[i].params, spec,
                                    opts[i].c_star, nc)
                              .mean_ratio;
        });
        double m = 0.0;
        for (const double v : inst_means) m += v;
        curve[gi] = m / inst_means.size();
        result.curves.push_back(
            {n, p, cfg.p2_grid[gi], curve[gi], 0.0, cfg.trajectories});
      }

      ThresholdPoint tp;
      tp.n = n;
      tp.p = p;
      tp.g_threshold = p * static_cast<double>(n) * (n - 1) / 2.0;
      tp.ratio_noise_free = mean0;
      tp.ratio_random = mean_rand;
      const double target = 0.5 * (mean0 + mean_rand);
      for (std::size_t gi = 0; gi < curve.size(); ++gi) {
        if (curve[gi] > target) continue;
        if (gi == 0) break;  // knee below the grid
        const double x0 = std::log(cfg.p2_grid[gi - 1]), x1 = std::log(cfg.p2_grid[gi]);
        const double t = (target - curve[gi - 1]) / (curve[gi] - curve[gi - 1]);
        tp.p2_threshold = std::exp(x0 + t * (x1 - x0));
        tp.found = true;
        break;
      }
      result.points.push_back(tp);
    }
  }

  std::vector<double> p2s, gs;
  for (const auto& tp : result.points) {
    if (!tp.found) continue;
    p2s.push_back(tp.p2_threshold);
    gs.push_back(tp.g_threshold);
  }
  if (!p2s.empty()) {
    const auto [kappa, r2] = fit_kappa(p2s, gs);
    result.kappa = kappa;
    result.r_squared = r2;
  }
  return result;
}

std::pair<double, double> fit_kappa(std::span<const double> p2,
                                    std::span<const double> g) {
  if (p2.size() != g.size() || p2.empty())
    throw std::invalid_argument("fit_kappa: need matching nonempty samples");
  // log g = log kappa - log p2, slope fixed at -1
  double acc = 0.0;
  for (std::size_t i = 0; i < p2.size(); ++i) acc += std::log(g[i]) + std::log(p2[i]);
  const double log_kappa = acc / p2.size();
  double ss_res = 0.0, ss_tot = 0.0, mean = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) mean += std::log(g[i]);
  mean /= g.size();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double pred = log_kappa - std::log(p2[i]);
    ss_res += (std::log(g[i]) - pred) * (std::log(g[i]) - pred);
    ss_tot += (std::log(g[i]) - mean) * (std::log(g[i]) - mean);
  }
  const double r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return {std::exp(log_kappa), r2};
}

ScalingEstimate scaling_estimate(double p_cx, int d, double kappa, int p) {
  if (p_cx <= 0.0 || p_cx >= 1.0)
    throw std::invalid_argument("scaling_estimate: p_cx in (0,1) required");
  ScalingEstimate est;
  est.p2_effective = (2.0 * d - 2.0) * p_cx;
  const double p2_rounded = std::pow(10.0, std::round(std::log10(est.p2_effective)));
  // g_th = kappa / p2 with g = p N(N-1)/2  ->  N(N-1) <= 2 kappa / (p p2)
  const double rhs = 2.0 * kappa / (p * p2_rounded);
  est.max_n = static_cast<int>(std::floor((1.0 + std::sqrt(1.0 + 4.0 * rhs)) / 2.0));
  return est;
}

}  // namespace qdcc::noise
