#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qdcc/bounds.hpp"
#include "qdcc/gatecount.hpp"
#include "qdcc/instances.hpp"
#include "qdcc/noise.hpp"
#include "qdcc/opensys.hpp"
#include "qdcc/strategies.hpp"

namespace qdcc::experiments {

/// Deterministic artifact name: <subcommand>-<16-hex config hash> + extension.
std::string default_artifact_name(const std::string& subcommand,
                                  const std::string& config,
                                  const std::string& extension);

/// Short dataset identifier used in result rows.
std::string dataset_id(const Dataset& ds);

struct GenDatasetOptions {
  DatasetKind kind = DatasetKind::complete;
  int n = 4;
  int count = 50;
  std::uint64_t seed = 0;
  std::string out;  // empty -> deterministic name
};
std::string run_gen_dataset(const GenDatasetOptions& o);

struct RunQaoaOptions {
  std::string dataset_path;
  int p = 1;
  strategies::OptimizerConfig optimizer;
  bool warm_start = true;
  bool loop_clusters = true;
  sim::MixerVariant mixer = sim::MixerVariant::standard;
  std::uint64_t seed = 1;
  std::string cache_path;
  std::string out;
};
std::string run_qaoa(const RunQaoaOptions& o);

struct RunNoiseOptions {
  std::vector<std::string> dataset_paths;
  std::vector<int> depths = {1};
  std::vector<double> p2_grid;  // empty -> default logspace
  int trajectories = 200;
  std::uint64_t seed = 0;
  strategies::OptimizerConfig optimizer;
  std::string cache_path;
  std::string out_prefix;  // writes <prefix>_curves.csv, _threshold.csv, _kappa.json
};
std::vector<std::string> run_noise(const RunNoiseOptions& o);

struct GateCountOptions {
  int n = 10;
  int d = 4;
  gatecount::EncodingKind encoding = gatecount::EncodingKind::qudit;
  gatecount::Topology topology = gatecount::Topology::chain_1d;
  bool sweep = false;  // emit the full per-edge coefficient table instead
  std::string out;
};
std::string run_gate_count(const GateCountOptions& o);

struct SwapScheduleOptions {
  int n = 8;
  std::string out;
};
std::string run_swap_schedule(const SwapScheduleOptions& o);

struct BoundsOptions {
  std::string relaxation = "lp1";  // lp1 | lp2 | iterate
  int rounds = 2;
  strategies::OptimizerConfig optimizer;
  std::string out;
};
std::string run_bounds(const BoundsOptions& o);

struct GatesVerifyOptions {
  int d_max = 7;
  int n_gammas = 8;
  std::uint64_t seed = 11;
  std::string out;
};
std::string run_gates_verify(const GatesVerifyOptions& o);

struct OpenSysOptions {
  opensys::SuiteOptions suite;
  std::string out;
};
std::string run_opensys(const OpenSysOptions& o);

}  // namespace qdcc::experiments
