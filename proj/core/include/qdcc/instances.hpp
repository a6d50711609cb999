#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "qdcc/rng.hpp"

namespace qdcc {

struct Edge {
  int u = 0;
  int v = 0;
  int w = 1;  // +1 similar, -1 dissimilar

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Correlation-clustering instance: simple undirected graph with +-1 edge weights.
struct ProblemGraph {
  int n_nodes = 0;
  std::vector<Edge> edges;  // sorted by (u, v); 0 <= u < v < n_nodes; unique

  int num_edges() const { return static_cast<int>(edges.size()); }
  int sum_weights() const;

  /// Throws std::invalid_argument on malformed data (range, order, duplicates).
  void validate() const;
};

/// Complete graph on n nodes, all weights -1. The optimum puts every node in
/// its own cluster; used as the warm-start reference instance.
ProblemGraph all_negative(int n);

struct Assignment {
  std::vector<int> labels;  // labels[u] in [d]
};

/// Number of edges whose weight matches the clustering: '+' inside a cluster
/// or '-' across clusters.
int agreements(const ProblemGraph& g, const Assignment& a);
int disagreements(const ProblemGraph& g, const Assignment& a);

struct OracleResult {
  long long c_star = 0;                        // max agreements
  std::vector<Assignment> optimal_assignments;  // canonical representatives
  std::set<int> optimal_cluster_counts;         // distinct labels used by some optimum
};

/// Exhaustive MAXAGREE oracle. Enumerates set partitions with fewer than
/// d_max+1 blocks (agreements are invariant under label permutation, so the
/// canonical representative of each partition suffices). d_max <= 0 means N.
/// Guarded to N <= 10.
OracleResult brute_force_maxagree(const ProblemGraph& g, int d_max = 0);

enum class DatasetKind { complete, erdos_renyi };

struct Dataset {
  DatasetKind kind = DatasetKind::complete;
  std::uint64_t seed = 0;
  std::vector<double> plus_probabilities;
  std::vector<ProblemGraph> instances;
};

/// Seeded dataset with the '+'-weight probability swept linearly over [0, 1]
/// (instance i uses i/(count-1)). Erdos-Renyi instances use edge probability
/// 0.5 and are regenerated until they have at least one edge.
Dataset generate_dataset(DatasetKind kind, int n, int count, std::uint64_t seed);

std::string kind_name(DatasetKind k);
DatasetKind kind_from_name(const std::string& s);

// Deterministic JSON: {"n": int, "edges": [[u,v,w],...]} with sorted edges,
// datasets as {"kind","seed","plus_probabilities","instances":[...]}.
std::string graph_to_json(const ProblemGraph& g);
ProblemGraph graph_from_json(const std::string& text);
std::string dataset_to_json(const Dataset& d);
Dataset dataset_from_json(const std::string& text);
Dataset load_dataset(const std::string& path);
void save_dataset(const Dataset& d, const std::string& path);

}  // namespace qdcc
