// Experiment runner: dataset generation, QAOA sweeps, noise scans, gate
// counts, swap schedules, approximation-bound derivations, gate verification
// and open-system runs. Outputs are deterministic CSV/JSON artifacts.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "qdcc/experiments.hpp"

namespace ex = qdcc::experiments;

int main(int argc, char** argv) {
  CLI::App app{"qudit correlation-clustering experiment runner"};
  app.require_subcommand(1);

  ex::GenDatasetOptions gen;
  std::string gen_kind = "complete";
  auto* cmd_gen = app.add_subcommand("gen-dataset", "generate a seeded instance dataset");
  cmd_gen->add_option("--kind", gen_kind, "complete | erdos_renyi");
  cmd_gen->add_option("--n", gen.n, "nodes per instance")->required();
  cmd_gen->add_option("--count", gen.count, "instances");
  cmd_gen->add_option("--seed", gen.seed, "RNG seed")->required();
  cmd_gen->add_option("--out", gen.out, "output JSON path");

  ex::RunQaoaOptions qa;
  std::string qa_mixer = "standard";
  auto* cmd_qa = app.add_subcommand("run-qaoa", "optimize QAOA on a dataset");
  cmd_qa->add_option("--dataset", qa.dataset_path)->required();
  cmd_qa->add_option("--p", qa.p, "QAOA depth")->required();
  cmd_qa->add_option("--max-evals", qa.optimizer.max_evals);
  cmd_qa->add_option("--restarts", qa.optimizer.restarts);
  cmd_qa->add_option("--seed", qa.seed)->required();
  cmd_qa->add_option("--mixer", qa_mixer, "standard | hardware_r1 | hardware_r2");
  cmd_qa->add_flag("!--no-warm-start", qa.warm_start, "disable warm starts");
  cmd_qa->add_flag("!--no-loop-d", qa.loop_clusters, "disable the cluster-number loop");
  cmd_qa->add_option("--cache", qa.cache_path, "warm-start cache JSON");
  cmd_qa->add_option("--out", qa.out);

  ex::RunNoiseOptions no;
  auto* cmd_no = app.add_subcommand("run-noise", "noisy trajectories and threshold scan");
  cmd_no->add_option("--dataset", no.dataset_paths, "dataset JSON path(s)")->required();
  cmd_no->add_option("--depths", no.depths, "QAOA depths");
  cmd_no->add_option("--p2", no.p2_grid, "p2 grid (default logspace 1e-4..1)");
  cmd_no->add_option("--trajectories", no.trajectories);
  cmd_no->add_option("--seed", no.seed)->required();
  cmd_no->add_option("--max-evals", no.optimizer.max_evals);
  cmd_no->add_option("--restarts", no.optimizer.restarts);
  cmd_no->add_option("--cache", no.cache_path);
  cmd_no->add_option("--out-prefix", no.out_prefix);

  ex::GateCountOptions gc;
  std::string gc_enc = "qudit", gc_topo = "1d";
  auto* cmd_gc = app.add_subcommand("gate-count", "2-gate cost accounting");
  cmd_gc->add_option("--n", gc.n)->required();
  cmd_gc->add_option("--d", gc.d)->required();
  cmd_gc->add_option("--encoding", gc_enc, "qudit | binary");
  cmd_gc->add_option("--topology", gc_topo, "1d | 2d");
  cmd_gc->add_flag("--sweep", gc.sweep, "emit the per-edge coefficient table");
  cmd_gc->add_option("--out", gc.out);

  ex::SwapScheduleOptions ss;
  auto* cmd_ss = app.add_subcommand("swap-schedule", "alternating swap layers on a line");
  cmd_ss->add_option("--n", ss.n)->required();
  cmd_ss->add_option("--out", ss.out);

  ex::BoundsOptions bo;
  auto* cmd_bo = app.add_subcommand("bounds", "3-regular depth-1 approximation bounds");
  cmd_bo->add_option("--relaxation", bo.relaxation, "lp1 | lp2 | iterate");
  cmd_bo->add_option("--rounds", bo.rounds);
  cmd_bo->add_option("--max-evals", bo.optimizer.max_evals);
  cmd_bo->add_option("--out", bo.out);

  ex::GatesVerifyOptions gv;
  auto* cmd_gv = app.add_subcommand("gates-verify", "gate identity verification table");
  cmd_gv->add_option("--d-max", gv.d_max);
  cmd_gv->add_option("--gammas", gv.n_gammas, "random phases per gate");
  cmd_gv->add_option("--seed", gv.seed);
  cmd_gv->add_option("--out", gv.out);

  ex::OpenSysOptions os;
  auto* cmd_os = app.add_subcommand("opensys", "open-system CP fidelity comparison");
  cmd_os->add_option("--gamma-cp", os.suite.gamma_cp);
  cmd_os->add_option("--v-over-omega", os.suite.v_over_omega);
  cmd_os->add_option("--gamma-grid", os.suite.gamma_grid, "decay rates");
  cmd_os->add_option("--steps", os.suite.evolve.steps_per_segment);
  cmd_os->add_option("--out", os.out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_gen->parsed()) {
      gen.kind = qdcc::kind_from_name(gen_kind);
      std::cout << ex::run_gen_dataset(gen) << "\n";
    } else if (cmd_qa->parsed()) {
      qa.mixer = qdcc::sim::mixer_from_name(qa_mixer);
      qa.optimizer.seed = qa.seed;
      std::cout << ex::run_qaoa(qa) << "\n";
    } else if (cmd_no->parsed()) {
      no.optimizer.seed = no.seed;
      for (const auto& p : ex::run_noise(no)) std::cout << p << "\n";
    } else if (cmd_gc->parsed()) {
      gc.encoding = qdcc::gatecount::encoding_from_name(gc_enc);
      gc.topology = qdcc::gatecount::topology_from_name(gc_topo);
      std::cout << ex::run_gate_count(gc) << "\n";
    } else if (cmd_ss->parsed()) {
      std::cout << ex::run_swap_schedule(ss) << "\n";
    } else if (cmd_bo->parsed()) {
      std::cout << ex::run_bounds(bo) << "\n";
    } else if (cmd_gv->parsed()) {
      std::cout << ex::run_gates_verify(gv) << "\n";
    } else if (cmd_os->parsed()) {
      std::cout << ex::run_opensys(os) << "\n";
    }
  } catch (const std::exception& e) {
    nlohmann::ordered_json err;
    err["error"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 0;
}
