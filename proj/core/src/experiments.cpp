#include "qdcc/experiments.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "qdcc/csv.hpp"
#include "qdcc/gates.hpp"
#include "qdcc/parallel.hpp"

namespace qdcc::experiments {

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << text;
}

}  // namespace

std::string default_artifact_name(const std::string& subcommand,
                                  const std::string& config,
                                  const std::string& extension) {
  return subcommand + "-" + hash_hex(fnv1a64(config)) + extension;
}

std::string dataset_id(const Dataset& ds) {
  std::ostringstream os;
  os << kind_name(ds.kind) << "-n";
  os << (ds.instances.empty() ? 0 : ds.instances.front().n_nodes);
  os << "-s" << ds.seed;
  return os.str();
}

std::string run_gen_dataset(const GenDatasetOptions& o) {
  std::ostringstream cfg;
  cfg << "gen-dataset kind=" << kind_name(o.kind) << " n=" << o.n
      << " count=" << o.count << " seed=" << o.seed;
  const Dataset ds = generate_dataset(o.kind, o.n, o.count, o.seed);
  const std::string path =
      o.out.empty() ? default_artifact_name("gen-dataset", cfg.str(), ".json") : o.out;
  save_dataset(ds, path);
  return path;
}

std::string run_qaoa(const RunQaoaOptions& o) {
  const Dataset ds = load_dataset(o.dataset_path);
  std::ostringstream cfg;
  cfg << "run-qaoa dataset=" << dataset_id(ds) << " p=" << o.p
      << " restarts=" << o.optimizer.max_evals << "/" << o.optimizer.restarts
      << " warm=" << o.warm_start << " loop=" << o.loop_clusters
      << " mixer=" << sim::mixer_name({o.mixer, 2, 1}) << " seed=" << o.seed;

  strategies::WarmStartCache cache(o.cache_path.empty() ? std::string() : o.cache_path);
  CsvWriter csv({"dataset_id", "instance_id", "N", "p", "d_best", "ratio", "evals"});
  const std::string id = dataset_id(ds);

  std::vector<strategies::RunReport> reports(ds.instances.size());
  parallel_for(ds.instances.size(), [&](std::size_t i) {
    strategies::SolveOptions so;
    so.use_warm_start = o.warm_start;
    so.loop_clusters = o.loop_clusters;
    so.mixer = o.mixer;
    so.seed = Rng::derive(o.seed, i);
    reports[i] = strategies::solve_instance(ds.instances[i], o.p, o.optimizer, so, &cache);
  });
  for (std::size_t i = 0; i < reports.size(); ++i)
    csv.row(id, i, ds.instances[i].n_nodes, o.p, reports[i].best_d,
            reports[i].best_ratio, reports[i].evals_used);

  if (!o.cache_path.empty()) cache.save();
  const std::string path =
      o.out.empty() ? default_artifact_name("run-qaoa", cfg.str(), ".csv") : o.out;
  csv.write(path, cfg.str(), "figure=approx_ratio_vs_instance");
  return path;
}

std::vector<std::string> run_noise(const RunNoiseOptions& o) {
  std::vector<Dataset> datasets;
  for (const auto& p : o.dataset_paths) datasets.push_back(load_dataset(p));
  std::ostringstream cfg;
  cfg << "run-noise datasets=";
  for (const auto& d : datasets) cfg << dataset_id(d) << ",";
  cfg << " depths=";
  for (const int p : o.depths) cfg << p << ",";
  cfg << " traj=" << o.trajectories << " seed=" << o.seed;

  noise::ThresholdScanConfig sc;
  if (!o.p2_grid.empty()) sc.p2_grid = o.p2_grid;
  sc.trajectories = o.trajectories;
  sc.seed = o.seed;
  sc.optimizer = o.optimizer;
  strategies::WarmStartCache cache(o.cache_path.empty() ? std::string() : o.cache_path);
  sc.cache = &cache;

  const noise::ThresholdResult res = noise::threshold_scan(datasets, o.depths, sc);
  if (!o.cache_path.empty()) cache.save();

  const std::string prefix =
      o.out_prefix.empty() ? default_artifact_name("run-noise", cfg.str(), "") : o.out_prefix;

  CsvWriter curves({"N", "p", "p2", "mean_ratio", "stderr", "trajectories"});
  for (const auto& c : res.curves)
    curves.row(c.n, c.p, c.p2, c.mean_ratio, c.stderr_ratio, c.trajectories);
  curves.write(prefix + "_curves.csv", cfg.str(), "figure=ratio_vs_p2");

  CsvWriter thr({"N", "p", "p2_th", "g_th"});
  for (const auto& t : res.points)
    if (t.found) thr.row(t.n, t.p, t.p2_threshold, t.g_threshold);
  thr.write(prefix + "_threshold.csv", cfg.str(), "figure=gth_vs_p2");

  nlohmann::ordered_json j;
  j["kappa"] = res.kappa;
  j["r_squared"] = res.r_squared;
  write_text(prefix + "_kappa.json", j.dump() + "\n");
  return {prefix + "_curves.csv", prefix + "_threshold.csv", prefix + "_kappa.json"};
}

namespace {

nlohmann::ordered_json breakdown_json(const gatecount::CostBreakdown& cb) {
  nlohmann::ordered_json j;
  j["encoding"] = gatecount::encoding_name(cb.encoding);
  j["topology"] = gatecount::topology_name(cb.topology);
  j["n"] = cb.n;
  j["d"] = cb.d;
  if (cb.encoding == gatecount::EncodingKind::binary) {
    j["q"] = cb.q;
    j["intra_swap_unit"] = cb.intra_swap_unit.str();
    j["multicontrol_unit"] = cb.multicontrol_unit;
  }
  j["cp_unit"] = cb.cp_unit.str();
  j["swap_unit"] = cb.swap_unit.str();
  j["n_inter_swaps"] = cb.n_inter_swaps;
  j["inter_swaps_subleading"] = cb.inter_swaps_subleading;
  j["per_edge_coeff"] = cb.per_edge_coeff.str();
  j["per_n_coeff"] = cb.per_n_coeff.str();
  j["per_n_sign"] = cb.per_n_sign;
  j["n_edges"] = cb.n_edges;
  j["c_tot"] = cb.c_tot.str();
  return j;
}

}  // namespace

std::string run_gate_count(const GateCountOptions& o) {
  std::ostringstream cfg;
  cfg << "gate-count n=" << o.n << " d=" << o.d
      << " enc=" << gatecount::encoding_name(o.encoding)
      << " topo=" << gatecount::topology_name(o.topology) << " sweep=" << o.sweep;
  if (!o.sweep) {
    const auto cb = gatecount::total_cost(o.n, o.d, o.encoding, o.topology);
    const std::string path =
        o.out.empty() ? default_artifact_name("gate-count", cfg.str(), ".json") : o.out;
    write_text(path, breakdown_json(cb).dump() + "\n");
    return path;
  }
  CsvWriter csv({"encoding", "topology", "d", "q", "per_edge_coeff", "per_n_coeff",
                 "per_n_sign"});
  for (const auto topo : {gatecount::Topology::chain_1d, gatecount::Topology::triangular_2d})
    for (const int d : {4, 8, 16})
      for (const auto enc :
           {gatecount::EncodingKind::qudit, gatecount::EncodingKind::binary}) {
        const auto cb = gatecount::total_cost(o.n, d, enc, topo);
        csv.row(gatecount::encoding_name(enc), gatecount::topology_name(topo), d, cb.q,
                cb.per_edge_coeff.str(), cb.per_n_coeff.str(), cb.per_n_sign);
      }
  const std::string path =
      o.out.empty() ? default_artifact_name("gate-count", cfg.str(), ".csv") : o.out;
  csv.write(path, cfg.str(), "figure=table_per_edge_coefficients");
  return path;
}

std::string run_swap_schedule(const SwapScheduleOptions& o) {
  std::ostringstream cfg;
  cfg << "swap-schedule n=" << o.n;
  const auto sched = gatecount::swap_schedule_1d(o.n);
  const auto [min_swaps, min_layers] = gatecount::swap_lower_bounds(o.n);
  CsvWriter csv({"layer", "swaps", "pairs"});
  for (std::size_t l = 0; l < sched.layers.size(); ++l) {
    std::ostringstream pairs;
    for (const auto& [a, b] : sched.layers[l]) pairs << a << "-" << b << ";";
    csv.row(l, sched.layers[l].size(), pairs.str());
  }
  std::ostringstream note;
  note << "total_swaps=" << sched.total_swaps << " layers=" << sched.layers.size()
       << " met_pairs=" << sched.met_pairs.size() << " lower_bound_swaps=" << min_swaps
       << " lower_bound_layers=" << min_layers;
  const std::string path =
      o.out.empty() ? default_artifact_name("swap-schedule", cfg.str(), ".csv") : o.out;
  csv.write(path, cfg.str(), note.str());
  return path;
}

std::string run_bounds(const BoundsOptions& o) {
  std::ostringstream cfg;
  cfg << "bounds relaxation=" << o.relaxation << " rounds=" << o.rounds;
  const bounds::BoundParams params = bounds::certification_params();
  nlohmann::ordered_json j;

  const bounds::FTable table = bounds::build_f_table(params);
  auto& cat = j["catalogue"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < table.catalogue.size(); ++i) {
    nlohmann::ordered_json lam;
    lam["structure"] = table.catalogue[i].structure;
    lam["weights"] = table.catalogue[i].weights;
    lam["c"] = table.c[i].str();
    cat.push_back(std::move(lam));
  }
  auto& ft = j["f_table"] = nlohmann::ordered_json::object();
  for (int d = 1; d <= 4; ++d) ft[std::to_string(d)] = table.f.at(d);

  auto hardest_json = [&](const std::map<bounds::WeightedSubgraph, double>& hardest) {
    nlohmann::ordered_json h = nlohmann::ordered_json::array();
    for (const auto& [lam, n] : hardest) {
      nlohmann::ordered_json item;
      item["structure"] = lam.structure;
      item["weights"] = lam.weights;
      item["n_lambda"] = n;
      h.push_back(std::move(item));
    }
    return h;
  };

  if (o.relaxation == "iterate") {
    const auto trace =
        bounds::iterative_bound(params, o.rounds, bounds::Relaxation::lp2, o.optimizer);
    auto& rounds = j["rounds"] = nlohmann::ordered_json::array();
    for (const auto& r : trace) {
      nlohmann::ordered_json item;
      item["alpha"] = r.lp_alpha;
      item["reoptimized_alpha"] = r.reoptimized_alpha;
      item["hardest_n_lambda"] = hardest_json(r.hardest);
      rounds.push_back(std::move(item));
    }
    j["alpha"] = trace.back().lp_alpha;
  } else {
    const auto rel = o.relaxation == "lp2" ? bounds::Relaxation::lp2 : bounds::Relaxation::lp1;
    const auto res = bounds::solve_bound(rel, table);
    j["alpha"] = res.alpha;
    j["hardest_n_lambda"] = hardest_json(res.hardest);
    j["lp_status"] = bounds::status_name(res.lp.status);
    j["lp_max_residual"] = res.lp.max_primal_residual;
  }
  const std::string path =
      o.out.empty() ? default_artifact_name("bounds", cfg.str(), ".json") : o.out;
  write_text(path, j.dump() + "\n");
  return path;
}

std::string run_gates_verify(const GatesVerifyOptions& o) {
  std::ostringstream cfg;
  cfg << "gates-verify dmax=" << o.d_max << " gammas=" << o.n_gammas << " seed=" << o.seed;
  Rng rng(o.seed);
  CsvWriter csv({"gate", "d", "max_deviation", "pass"});
  constexpr double kTol = 1e-10;
  auto report = [&](const std::string& name, int d, double dev) {
    csv.row(name, d, dev, dev <= kTol ? 1 : 0);
  };

  for (int d = 2; d <= o.d_max; ++d) {
    double dev_sym = 0.0, dev_chain = 0.0, dev_pair = 0.0, leak = 0.0;
    for (int k = 0; k < o.n_gammas; ++k) {
      const double gamma = rng.uniform(0.0, 2.0 * 3.141592653589793);
      const auto target = gates::cp_target(d, gamma);
      const auto sym = gates::cp_symmetric(d, gamma);
      const auto chain = gates::cp_chain(d, gamma);
      const gates::ExtendedSpace ssym{d, false}, schain{d, true};
      const auto bsym = gates::qudit_block(sym, ssym);
      const auto bchain = gates::qudit_block(chain, schain);
      dev_sym = std::max(dev_sym, gates::phase_distance(bsym, target));
      dev_chain = std::max(dev_chain, gates::phase_distance(bchain, target));
      dev_pair = std::max(dev_pair, gates::phase_distance(bsym, bchain));
      leak = std::max({leak, gates::rydberg_leakage(sym, ssym),
                       gates::rydberg_leakage(chain, schain)});
    }
    report("cp_symmetric_vs_target", d, dev_sym);
    report("cp_chain_vs_target", d, dev_chain);
    report("cp_symmetric_vs_chain", d, dev_pair);
    report("rydberg_leakage", d, leak);

    // swap vs the exchange permutation
    const auto sw = gates::swap_d(d);
    Eigen::MatrixXcd perm = Eigen::MatrixXcd::Zero(d * d, d * d);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) perm(b * d + a, a * d + b) = 1.0;
    report("swap_d_vs_exchange", d, gates::phase_distance(sw, perm));

    const auto init = gates::init_sequence(d);
    double dev_init = 0.0;
    const double want = 1.0 / std::sqrt(static_cast<double>(d));
    for (int l = 0; l < d; ++l)
      dev_init = std::max(dev_init, std::abs(std::abs(init(l, 0)) - want));
    report("init_sequence_moduli", d, dev_init);
  }
  const std::string path =
      o.out.empty() ? default_artifact_name("gates-verify", cfg.str(), ".csv") : o.out;
  csv.write(path, cfg.str(), "tolerance=1e-10");
  return path;
}

std::string run_opensys(const OpenSysOptions& o) {
  std::ostringstream cfg;
  cfg << "opensys gamma_cp=" << o.suite.gamma_cp << " V/Omega=" << o.suite.v_over_omega
      << " grid=";
  for (const double g : o.suite.gamma_grid) cfg << g << ",";
  const auto rep = opensys::fidelity_suite(o.suite);
  CsvWriter csv({"p2", "F_err", "F_open", "F_err_open"});
  for (std::size_t i = 0; i < rep.p2.size(); ++i)
    csv.row(rep.p2[i], rep.f_err[i], rep.f_open[i], rep.f_err_open[i]);
  std::ostringstream note;
  note << "figure=fidelity_vs_p2 eta=" << rep.eta << " t_cp=" << rep.t_cp
       << " gamma0_fidelity=" << rep.gamma0_fidelity;
  const std::string path =
      o.out.empty() ? default_artifact_name("opensys", cfg.str(), ".csv") : o.out;
  csv.write(path, cfg.str(), note.str());
  return path;
}

}  // namespace qdcc::experiments
