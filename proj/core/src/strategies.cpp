#include "qdcc/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qdcc::strategies {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double wrap_angle(double x) {
  x = std::fmod(x, kTwoPi);
  return x < 0 ? x + kTwoPi : x;
}

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::span<const double> x0, const OptimizerConfig& cfg) {
  const int k = static_cast<int>(x0.size());
  if (k < 1) throw std::invalid_argument("nelder_mead: empty start point");
  if (cfg.max_evals < 1) throw std::invalid_argument("nelder_mead: max_evals >= 1");

  int evals = 0;
  std::vector<double> best_x(x0.begin(), x0.end());
  double best_f = -1e300;
  auto eval = [&](const std::vector<double>& x) {
    const double f = objective(x);
    ++evals;
    if (std::isnan(f)) throw std::runtime_error("nelder_mead: objective returned NaN");
    if (f > best_f) {
      best_f = f;
      best_x = x;
    }
    return -f;  // minimize internally
  };

  std::vector<std::vector<double>> pts(k + 1, std::vector<double>(x0.begin(), x0.end()));
  std::vector<double> fs(k + 1, 1e300);
  for (int i = 1; i <= k; ++i) pts[i][i - 1] += cfg.init_simplex_scale;
  for (int i = 0; i <= k && evals < cfg.max_evals; ++i) fs[i] = eval(pts[i]);

  std::vector<int> order(k + 1);
  auto sort_simplex = [&] {
    for (int i = 0; i <= k; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return fs[a] < fs[b]; });
  };

  while (evals < cfg.max_evals) {
    sort_simplex();
    const int best = order[0], worst = order[k], second = order[k - 1];
    if (fs[worst] - fs[best] <= cfg.tolerance) break;

    std::vector<double> centroid(k, 0.0);
    for (int i = 0; i <= k; ++i) {
      if (i == worst) continue;
      for (int j = 0; j < k; ++j) centroid[j] += pts[i][j] / k;
    }
    auto mix = [&](double t) {
      std::vector<double> x(k);
      for (int j = 0; j < k; ++j) x[j] = centroid[j] + t * (centroid[j] - pts[worst][j]);
      return x;
    };

    const auto xr = mix(1.0);
    const double fr = eval(xr);
    if (fr < fs[best]) {
      if (evals >= cfg.max_evals) {
        pts[worst] = xr;
        fs[worst] = fr;
        break;
      }
      const auto xe = mix(2.0);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe;
        fs[worst] = fe;
      } else {
        pts[worst] = xr;
        fs[worst] = fr;
      }
    } else if (fr < fs[second]) {
      pts[worst] = xr;
      fs[worst] = fr;
    } else {
      const bool outside = fr < fs[worst];
      if (evals >= cfg.max_evals) break;
      const auto xc = mix(outside ? 0.5 : -0.5);
      const double fc = eval(xc);
      if (fc < (outside ? fr : fs[worst])) {
        pts[worst] = xc;
        fs[worst] = fc;
      } else {
        // shrink toward the best point
        for (int i = 0; i <= k; ++i) {
          if (i == best) continue;
          for (int j = 0; j < k; ++j)
            pts[i][j] = pts[best][j] + 0.5 * (pts[i][j] - pts[best][j]);
          if (evals >= cfg.max_evals) break;
          fs[i] = eval(pts[i]);
        }
      }
    }
  }

  NelderMeadResult res;
  res.x = best_x;
  res.f = best_f;
  res.evals = evals;
  return res;
}

WarmStartCache::WarmStartCache(std::string path) : path_(std::move(path)) {
  std::ifstream f(path_, std::ios::binary);
  if (!f) return;
  std::ostringstream buf;
  buf << f.rdbuf();
  if (buf.str().empty()) return;
  const auto j = nlohmann::json::parse(buf.str());
  for (const auto& e : j) {
    Entry entry;
    entry.params.gammas = e.at("gammas").get<std::vector<double>>();
    entry.params.betas = e.at("betas").get<std::vector<double>>();
    entry.f = e.at("F").get<double>();
    entries_[{e.at("N").get<int>(), e.at("d").get<int>(), e.at("p").get<int>(),
              e.at("mixer").get<std::string>()}] = std::move(entry);
  }
}

std::optional<WarmStartCache::Entry> WarmStartCache::lookup(int n, int d, int p,
                                                            const std::string& mixer) const {
  std::shared_lock lock(mu_);
  const auto it = entries_.find({n, d, p, mixer});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void WarmStartCache::store(int n, int d, int p, const std::string& mixer, Entry e) {
  std::unique_lock lock(mu_);
  entries_[{n, d, p, mixer}] = std::move(e);
}

void WarmStartCache::save() const {
  if (path_.empty()) return;
  std::shared_lock lock(mu_);
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& [key, e] : entries_) {
    nlohmann::ordered_json item;
    item["N"] = std::get<0>(key);
    item["d"] = std::get<1>(key);
    item["p"] = std::get<2>(key);
    item["mixer"] = std::get<3>(key);
    item["gammas"] = e.params.gammas;
    item["betas"] = e.params.betas;
    item["F"] = e.f;
    j.push_back(std::move(item));
  }
  std::ofstream f(path_, std::ios::binary);
  if (!f) throw std::runtime_error("warm-start cache: cannot write " + path_);
  f << j.dump() << "\n";
}

std::size_t WarmStartCache::size() const {
  std::shared_lock lock(mu_);
  return entries_.size();
}

namespace {

sim::QaoaParams params_from(std::span<const double> x, int p) {
  sim::QaoaParams q;
  for (int i = 0; i < p; ++i) q.gammas.push_back(wrap_angle(x[i]));
  for (int i = 0; i < p; ++i) q.betas.push_back(wrap_angle(x[p + i]));
  return q;
}

/// F_p objective over the flat (gammas..., betas...) vector, angles wrapped.
struct FpObjective {
  const sim::CostDiagonal* diag;
  sim::MixerSpec spec;
  int n;
  int p;

  double operator()(std::span<const double> x) const {
    sim::StateVector s = sim::uniform_state(n, spec.d);
    for (int k = 0; k < p; ++k) {
      sim::apply_cost(s, *diag, wrap_angle(x[k]));
      sim::apply_mixer(s, spec, wrap_angle(x[p + k]));
    }
    return sim::expectation(s, *diag);
  }
};

struct BestOfRestarts {
  double f = -1e300;
  std::vector<double> x;
  int evals = 0;
};

BestOfRestarts optimize_multistart(const FpObjective& obj, int p,
                                   const OptimizerConfig& cfg,
                                   const sim::QaoaParams* warm, Rng& rng,
                                   double stop_when_f_at_least) {
  BestOfRestarts best;
  for (int r = 0; r < std::max(1, cfg.restarts); ++r) {
    std::vector<double> x0(2 * p);
    if (warm && r == 0) {
      for (int i = 0; i < p; ++i) x0[i] = warm->gammas[i];
      for (int i = 0; i < p; ++i) x0[p + i] = warm->betas[i];
    } else if (warm) {
      for (int i = 0; i < p; ++i) x0[i] = warm->gammas[i] + 0.15 * rng.normal();
      for (int i = 0; i < p; ++i) x0[p + i] = warm->betas[i] + 0.15 * rng.normal();
    } else {
      for (int i = 0; i < 2 * p; ++i) x0[i] = rng.uniform(0.0, kTwoPi);
    }
    const auto res = nelder_mead(std::cref(obj), x0, cfg);
    best.evals += res.evals;
    if (res.f > best.f) {
      best.f = res.f;
      best.x = res.x;
    }
    if (best.f >= stop_when_f_at_least) break;
  }
  return best;
}

}  // namespace

sim::QaoaParams warm_start(int n, int d, int p, const sim::MixerSpec& spec,
                           const OptimizerConfig& cfg, WarmStartCache* cache) {
  if (d > n) throw std::invalid_argument("warm_start: d <= N required");
  const std::string mixer = sim::mixer_name(spec);
  if (cache) {
    if (const auto hit = cache->lookup(n, d, p, mixer)) return hit->params;
  }
  const ProblemGraph ref = all_negative(n);
  const sim::CostDiagonal diag = sim::cost_diagonal(ref, d);
  const FpObjective obj{&diag, spec, n, p};
  Rng rng(Rng::derive(cfg.seed, 0x77A7 + 1000003ULL * n + 1009ULL * d + p));
  OptimizerConfig warm_cfg = cfg;
  warm_cfg.restarts = std::max(cfg.restarts, 4);  // reference point is reused widely
  const auto best = optimize_multistart(obj, p, warm_cfg, nullptr, rng, 1e300);
  const sim::QaoaParams params = params_from(best.x, p);
  if (cache) cache->store(n, d, p, mixer, {params, best.f});
  return params;
}

RunReport solve_instance(const ProblemGraph& g, int p, const OptimizerConfig& cfg,
                         const SolveOptions& opts, WarmStartCache* cache) {
  g.validate();
  const int n = g.n_nodes;
  const int e = g.num_edges();
  const OracleResult oracle = brute_force_maxagree(g);
  RunReport report;
  report.best_ratio = -1e300;

  std::vector<int> ds;
  if (opts.loop_clusters) {
    for (int d = 1; d <= n; ++d) ds.push_back(d);
  } else {
    ds.push_back(opts.fixed_d > 0 ? opts.fixed_d : n);
  }

  for (const int d : ds) {
    PerDResult pr;
    if (d == 1) {
      // single basis state: every node in cluster 0
      pr.f = g.sum_weights();
      pr.ratio = sim::approx_ratio(pr.f, e, oracle.c_star);
    } else {
      sim::MixerSpec spec{opts.mixer, d, 1};
      const sim::CostDiagonal diag = sim::cost_diagonal(g, d);
      const FpObjective obj{&diag, spec, n, p};
      sim::QaoaParams warm;
      const sim::QaoaParams* warm_ptr = nullptr;
      if (opts.use_warm_start) {
        warm = warm_start(n, d, p, spec, cfg, cache);
        warm_ptr = &warm;
      }
      Rng rng(Rng::derive(opts.seed, 0x50D + d));
      const double stop_f =
          2.0 * opts.early_stop_ratio * static_cast<double>(oracle.c_star) - e;
      const auto best = optimize_multistart(obj, p, cfg, warm_ptr, rng, stop_f);
      pr.f = best.f;
      pr.ratio = sim::approx_ratio(best.f, e, oracle.c_star);
      pr.params = params_from(best.x, p);
      pr.evals = best.evals;
    }
    report.evals_used += pr.evals;
    report.per_d[d] = pr;
    if (pr.ratio > report.best_ratio + 1e-15) {
      report.best_ratio = pr.ratio;
      report.best_d = d;
      report.best_params = pr.params;
    }
  }
  return report;
}

ConcentrationReport concentration_report(int n, int d, const Dataset& dataset,
                                         const OptimizerConfig& cfg,
                                         WarmStartCache* cache) {
  constexpr int p = 1;
  sim::MixerSpec spec{sim::MixerVariant::standard, d, 1};
  const sim::QaoaParams warm = warm_start(n, d, p, spec, cfg, cache);

  ConcentrationReport rep;
  for (const auto& g : dataset.instances) {
    if (g.n_nodes != n)
      throw std::invalid_argument("concentration_report: dataset N mismatch");
    const sim::CostDiagonal diag = sim::cost_diagonal(g, d);
    const FpObjective obj{&diag, spec, n, p};
    const std::vector<double> x0 = {warm.gammas[0], warm.betas[0]};
    OptimizerConfig single = cfg;
    single.restarts = 1;
    const auto res = nelder_mead(std::cref(obj), x0, single);
    rep.points.push_back({wrap_angle(res.x[0]), wrap_angle(res.x[1])});
  }

  // smallest periodic axis-aligned box: per axis, the complement of the
  // largest cyclic gap between sorted angles
  double fraction = 1.0;
  for (int axis = 0; axis < 2; ++axis) {
    std::vector<double> vals;
    vals.reserve(rep.points.size());
    for (const auto& pt : rep.points) vals.push_back(pt[axis]);
    std::sort(vals.begin(), vals.end());
    double max_gap = kTwoPi - vals.back() + vals.front();
    for (std::size_t i = 1; i < vals.size(); ++i)
      max_gap = std::max(max_gap, vals[i] - vals[i - 1]);
    fraction *= (kTwoPi - max_gap) / kTwoPi;
  }
  rep.box_fraction = rep.points.size() < 2 ? 0.0 : fraction;
  return rep;
}

}  // namespace qdcc::strategies
