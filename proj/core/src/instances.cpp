#include "qdcc/instances.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qdcc {

int ProblemGraph::sum_weights() const {
  int s = 0;
  for (const auto& e : edges) s += e.w;
  return s;
}

void ProblemGraph::validate() const {
  if (n_nodes < 1) throw std::invalid_argument("graph: n_nodes must be positive");
  const Edge* prev = nullptr;
  for (const auto& e : edges) {
    if (e.u < 0 || e.v >= n_nodes || e.u >= e.v)
      throw std::invalid_argument("graph: edge endpoints must satisfy 0 <= u < v < n");
    if (e.w != 1 && e.w != -1)
      throw std::invalid_argument("graph: weights must be +1 or -1");
    if (prev && !(prev->u < e.u || (prev->u == e.u && prev->v < e.v)))
      throw std::invalid_argument("graph: edges must be sorted and unique");
    prev = &e;
  }
}

ProblemGraph all_negative(int n) {
  if (n < 2) throw std::invalid_argument("all_negative: need n >= 2");
  ProblemGraph g;
  g.n_nodes = n;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.edges.push_back({u, v, -1});
  return g;
}

int agreements(const ProblemGraph& g, const Assignment& a) {
  if (static_cast<int>(a.labels.size()) != g.n_nodes)
    throw std::invalid_argument("agreements: assignment length mismatch");
  for (const int l : a.labels)
    if (l < 0) throw std::invalid_argument("agreements: label out of range");
  int agr = 0;
  for (const auto& e : g.edges) {
    const bool same = a.labels[e.u] == a.labels[e.v];
    if ((e.w == 1) == same) ++agr;
  }
  return agr;
}

int disagreements(const ProblemGraph& g, const Assignment& a) {
  return g.num_edges() - agreements(g, a);
}

OracleResult brute_force_maxagree(const ProblemGraph& g, int d_max) {
  g.validate();
  const int n = g.n_nodes;
  if (n > 10) throw std::invalid_argument("brute_force_maxagree: N > 10 exceeds capacity guard");
  if (d_max <= 0) d_max = n;

  OracleResult res;
  res.c_star = -1;
  Assignment a;
  a.labels.assign(n, 0);

  // Restricted growth strings: labels[0]=0, labels[i] <= 1+max(previous), < d_max.
  std::function<void(int, int)> rec = [&](int i, int maxl) {
    if (i == n) {
      const int agr = agreements(g, a);
      if (agr > res.c_star) {
        res.c_star = agr;
        res.optimal_assignments.clear();
        res.optimal_cluster_counts.clear();
      }
      if (agr == res.c_star) {
        res.optimal_assignments.push_back(a);
        res.optimal_cluster_counts.insert(maxl + 1);
      }
      return;
    }
    const int hi = std::min(maxl + 1, d_max - 1);
    for (int l = 0; l <= hi; ++l) {
      a.labels[i] = l;
      rec(i + 1, std::max(maxl, l));
    }
  };
  rec(0, -1);
  return res;
}

Dataset generate_dataset(DatasetKind kind, int n, int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("generate_dataset: count >= 1 required");
  if (n < 2) throw std::invalid_argument("generate_dataset: n >= 2 required");
  Dataset ds;
  ds.kind = kind;
  ds.seed = seed;
  Rng rng(seed);
  for (int i = 0; i < count; ++i) {
    const double p_plus = count > 1 ? static_cast<double>(i) / (count - 1) : 0.5;
    ds.plus_probabilities.push_back(p_plus);
    ProblemGraph g;
    g.n_nodes = n;
    if (kind == DatasetKind::complete) {
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
          g.edges.push_back({u, v, rng.uniform() < p_plus ? 1 : -1});
    } else {
      do {
        g.edges.clear();
        for (int u = 0; u < n; ++u)
          for (int v = u + 1; v < n; ++v)
            if (rng.uniform() < 0.5)
              g.edges.push_back({u, v, rng.uniform() < p_plus ? 1 : -1});
      } while (g.edges.empty());
    }
    ds.instances.push_back(std::move(g));
  }
  return ds;
}

std::string kind_name(DatasetKind k) {
  return k == DatasetKind::complete ? "complete" : "erdos_renyi";
}

DatasetKind kind_from_name(const std::string& s) {
  if (s == "complete") return DatasetKind::complete;
  if (s == "erdos_renyi") return DatasetKind::erdos_renyi;
  throw std::invalid_argument("unknown dataset kind: " + s);
}

namespace {

nlohmann::ordered_json graph_json(const ProblemGraph& g) {
  nlohmann::ordered_json j;
  j["n"] = g.n_nodes;
  auto& edges = j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : g.edges) edges.push_back({e.u, e.v, e.w});
  return j;
}

ProblemGraph graph_from(const nlohmann::json& j) {
  ProblemGraph g;
  g.n_nodes = j.at("n").get<int>();
  for (const auto& e : j.at("edges"))
    g.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>()});
  g.validate();
  return g;
}

}  // namespace

std::string graph_to_json(const ProblemGraph& g) { return graph_json(g).dump(); }

ProblemGraph graph_from_json(const std::string& text) {
  return graph_from(nlohmann::json::parse(text));
}

std::string dataset_to_json(const Dataset& d) {
  nlohmann::ordered_json j;
  j["kind"] = kind_name(d.kind);
  j["seed"] = d.seed;
  j["plus_probabilities"] = d.plus_probabilities;
  auto& inst = j["instances"] = nlohmann::ordered_json::array();
  for (const auto& g : d.instances) inst.push_back(graph_json(g));
  return j.dump();
}

Dataset dataset_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  Dataset d;
  d.kind = kind_from_name(j.at("kind").get<std::string>());
  d.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("plus_probabilities"))
    d.plus_probabilities = j.at("plus_probabilities").get<std::vector<double>>();
  for (const auto& gj : j.at("instances")) d.instances.push_back(graph_from(gj));
  return d;
}

Dataset load_dataset(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open dataset: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return dataset_from_json(buf.str());
}

void save_dataset(const Dataset& d, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << dataset_to_json(d) << "\n";
}

}  // namespace qdcc
