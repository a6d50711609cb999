#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "qdcc/experiments.hpp"

using namespace qdcc;
namespace ex = qdcc::experiments;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("dataset artifacts are deterministic and idempotent") {
  ex::GenDatasetOptions o;
  o.kind = DatasetKind::complete;
  o.n = 4;
  o.count = 50;
  o.seed = 7;
  const std::string p1 = ex::run_gen_dataset(o);
  const std::string first = slurp(p1);
  const std::string p2 = ex::run_gen_dataset(o);
  CHECK(p1 == p2);  // name derives from the config
  CHECK(slurp(p2) == first);
  const auto ds = load_dataset(p1);
  CHECK(ds.instances.size() == 50);
  for (const auto& g : ds.instances) CHECK(g.num_edges() == 6);
  fs::remove(p1);
}

TEST_CASE("qaoa runs produce ratio rows with a config trailer") {
  ex::GenDatasetOptions gen;
  gen.kind = DatasetKind::erdos_renyi;
  gen.n = 3;
  gen.count = 4;
  gen.seed = 3;
  gen.out = "exp_test_ds.json";
  ex::run_gen_dataset(gen);

  ex::RunQaoaOptions o;
  o.dataset_path = gen.out;
  o.p = 1;
  o.optimizer.max_evals = 60;
  o.optimizer.restarts = 2;
  o.seed = 5;
  o.out = "exp_test_qaoa.csv";
  const std::string path = ex::run_qaoa(o);
  const std::string text = slurp(path);
  CHECK(text.rfind("dataset_id,instance_id,N,p,d_best,ratio,evals\n", 0) == 0);
  CHECK(text.find("# config_hash=") != std::string::npos);

  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);  // header
  int rows = 0;
  while (std::getline(lines, line)) {
    if (line.rfind("#", 0) == 0) break;
    std::istringstream cells(line);
    std::string cell;
    for (int c = 0; c <= 5; ++c) std::getline(cells, cell, ',');
    const double ratio = std::stod(cell);
    CHECK(ratio >= 0.0);
    CHECK(ratio <= 1.0 + 1e-12);
    ++rows;
  }
  CHECK(rows == 4);

  // identical config reruns are byte-identical
  const std::string again = ex::run_qaoa(o);
  CHECK(slurp(again) == text);
  fs::remove(gen.out);
  fs::remove(path);
}

TEST_CASE("gate count artifact") {
  ex::GateCountOptions o;
  o.n = 10;
  o.d = 4;
  o.out = "exp_test_gc.json";
  const std::string path = ex::run_gate_count(o);
  const std::string text = slurp(path);
  CHECK(text.find("\"per_edge_coeff\":\"15\"") != std::string::npos);
  CHECK(text.find("\"c_tot\":\"594\"") != std::string::npos);
  fs::remove(path);
}

TEST_CASE("swap schedule artifact") {
  ex::SwapScheduleOptions o;
  o.n = 6;
  o.out = "exp_test_ss.csv";
  const std::string path = ex::run_swap_schedule(o);
  const std::string text = slurp(path);
  CHECK(text.find("total_swaps=10") != std::string::npos);
  CHECK(text.find("met_pairs=15") != std::string::npos);
  fs::remove(path);
}

TEST_CASE("gates verification artifact flags every identity as passing") {
  ex::GatesVerifyOptions o;
  o.d_max = 3;
  o.n_gammas = 2;
  o.out = "exp_test_gv.csv";
  const std::string path = ex::run_gates_verify(o);
  std::istringstream lines(slurp(path));
  std::string line;
  std::getline(lines, line);
  while (std::getline(lines, line)) {
    if (line.rfind("#", 0) == 0) break;
    CHECK(line.back() == '1');
  }
  fs::remove(path);
}

}  // TEST_SUITE
