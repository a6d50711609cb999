#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "qdcc/instances.hpp"
#include "qdcc/simulator.hpp"

namespace qdcc::strategies {

struct OptimizerConfig {
  int max_evals = 500;
  int restarts = 5;
  double init_simplex_scale = 0.25;
  double tolerance = 1e-9;  // stop when the simplex objective spread falls below
  std::uint64_t seed = 0;
};

struct NelderMeadResult {
  std::vector<double> x;
  double f = 0.0;
  int evals = 0;
};

/// Derivative-free simplex maximizer. Deterministic given x0 and cfg;
/// terminates within cfg.max_evals evaluations. Throws on NaN objectives.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::span<const double> x0, const OptimizerConfig& cfg);

/// Optimized initial points, keyed by (N, d, p, mixer) and optionally
/// persisted as JSON. Thread-safe (single writer, shared readers).
class WarmStartCache {
 public:
  WarmStartCache() = default;
  explicit WarmStartCache(std::string path);

  struct Entry {
    sim::QaoaParams params;
    double f = 0.0;  // cached objective on the reference instance
  };

  std::optional<Entry> lookup(int n, int d, int p, const std::string& mixer) const;
  void store(int n, int d, int p, const std::string& mixer, Entry e);
  void save() const;
  std::size_t size() const;

 private:
  using Key = std::tuple<int, int, int, std::string>;
  mutable std::shared_mutex mu_;
  std::map<Key, Entry> entries_;
  std::string path_;
};

/// Optimized parameters for (N, d, p) obtained on the all-negative reference
/// instance with multi-start; cached.
sim::QaoaParams warm_start(int n, int d, int p, const sim::MixerSpec& spec,
                           const OptimizerConfig& cfg, WarmStartCache* cache);

struct PerDResult {
  double f = 0.0;
  double ratio = 0.0;
  sim::QaoaParams params;
  int evals = 0;
};

struct RunReport {
  double best_ratio = 0.0;
  sim::QaoaParams best_params;
  int best_d = 1;
  long long evals_used = 0;
  std::map<int, PerDResult> per_d;
};

struct SolveOptions {
  bool use_warm_start = true;
  bool loop_clusters = true;  // d in 1..N; otherwise d = fixed_d (default N)
  int fixed_d = 0;
  sim::MixerVariant mixer = sim::MixerVariant::standard;
  std::uint64_t seed = 1;
  double early_stop_ratio = 2.0;  // skip remaining restarts past this ratio
};

/// Full classical outer loop on one instance: per-d restarts of the simplex
/// maximizer on F_p, best ratio over d (ties resolved toward smaller d).
/// d = 1 is evaluated analytically.
RunReport solve_instance(const ProblemGraph& g, int p, const OptimizerConfig& cfg,
                         const SolveOptions& opts, WarmStartCache* cache);

struct ConcentrationReport {
  double box_fraction = 0.0;  // smallest periodic axis-aligned box / (2 pi)^2
  std::vector<std::array<double, 2>> points;  // optimized (gamma, beta) per instance
};

/// Depth-1 concentration study: optimize every instance from the shared warm
/// start and report how tightly the optima cluster in parameter space.
ConcentrationReport concentration_report(int n, int d, const Dataset& dataset,
                                         const OptimizerConfig& cfg,
                                         WarmStartCache* cache);

/// Wraps an angle into [0, 2 pi).
double wrap_angle(double x);

}  // namespace qdcc::strategies
