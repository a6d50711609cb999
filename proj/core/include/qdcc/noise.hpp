#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qdcc/instances.hpp"
#include "qdcc/simulator.hpp"
#include "qdcc/strategies.hpp"

namespace qdcc::noise {

/// The d^2 generalized Pauli unitaries X^r Z^s with X the cyclic level shift
/// and Z = diag(1, w, ..., w^(d-1)), w = exp(i 2 pi / d). Element 0 is the
/// identity.
struct WeylSet {
  int d = 2;
  std::vector<Eigen::MatrixXcd> unitaries;  // size d^2, index r*d + s
};

WeylSet weyl_set(int d);

struct NoiseConfig {
  double p2 = 0.0;
  int trajectories = 1;
  std::uint64_t seed = 0;
};

/// One stochastic channel application: independently per listed pair, with
/// probability 1-p2 nothing happens; otherwise a uniformly random non-identity
/// element of W x W (d^4 - 1 choices) hits the two qudits. The RNG stream is
/// consumed identically for every p2 so runs with the same seed are coupled
/// across noise levels. d = 1 has no non-identity element and is a no-op.
void apply_error_channel(sim::StateVector& s, std::span<const Edge> pairs, double p2,
                         const WeylSet& weyl, Rng& rng);

struct NoisyResult {
  double mean_ratio = 0.0;
  double stderr_ratio = 0.0;
  int trajectories = 0;
};

/// Monte-Carlo mean of the expectation-derived ratio with the channel applied
/// after each cost layer (mixers are noiseless). Parameters come pre-optimized;
/// no optimizer runs here.
NoisyResult run_noisy(const ProblemGraph& g, int d, const sim::QaoaParams& params,
                      const sim::MixerSpec& spec, long long c_star,
                      const NoiseConfig& cfg);

struct ThresholdPoint {
  int n = 0;
  int p = 0;
  double p2_threshold = 0.0;
  double g_threshold = 0.0;  // p * N(N-1)/2
  bool found = false;
  double ratio_noise_free = 0.0;
  double ratio_random = 0.0;
};

struct NoiseCurvePoint {
  int n = 0;
  int p = 0;
  double p2 = 0.0;
  double mean_ratio = 0.0;
  double stderr_ratio = 0.0;
  int trajectories = 0;
};

struct ThresholdResult {
  std::vector<ThresholdPoint> points;
  std::vector<NoiseCurvePoint> curves;
  double kappa = 0.0;
  double r_squared = 0.0;
};

struct ThresholdScanConfig {
  std::vector<double> p2_grid;  // must span the knee; default logspace 1e-4..1
  int trajectories = 200;
  std::uint64_t seed = 0;
  strategies::OptimizerConfig optimizer;
  sim::MixerVariant mixer = sim::MixerVariant::standard;
  strategies::WarmStartCache* cache = nullptr;

  ThresholdScanConfig();
};

/// Per (N, p): noise-free optimization of every instance, then the mean-ratio
/// curve over the p2 grid; the threshold is where the curve crosses halfway
/// between the noise-free and random-guess means (log-p2 interpolation).
/// kappa is the log-space least-squares fit of g_th = kappa / p2_th.
ThresholdResult threshold_scan(std::span<const Dataset> datasets,
                               std::span<const int> depths,
                               const ThresholdScanConfig& cfg);

/// Fit kappa (and R^2, both in log space) for g = kappa / p2 on given points.
std::pair<double, double> fit_kappa(std::span<const double> p2,
                                    std::span<const double> g);

struct ScalingEstimate {
  double p2_effective = 0.0;  // (2d-2) * p_cx
  int max_n = 0;              // largest N with p*N(N-1)/2 <= kappa/p2
};

/// Achievable system size under the threshold law. The effective error is
/// rounded to the nearest power of ten before inversion — the estimate is an
/// order-of-magnitude one.
ScalingEstimate scaling_estimate(double p_cx, int d, double kappa, int p);

}  // namespace qdcc::noise
