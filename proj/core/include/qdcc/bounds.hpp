#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "qdcc/instances.hpp"
#include "qdcc/rational.hpp"
#include "qdcc/simplex.hpp"
#include "qdcc/strategies.hpp"

namespace qdcc::bounds {

/// The three depth-1 edge environments in a 3-regular graph: the centre edge
/// plus its four adjacent edges, with 0, 1 or 2 endpoint neighbours shared.
struct SubgraphStructure {
  int id = 0;  // 0: six nodes (no shared neighbour), 1: five (triangle), 2: four (crossed square)
  int n_nodes = 0;
  std::array<Edge, 5> edges;  // unit weights; index 0 is the centre edge
  std::vector<std::array<int, 5>> edge_automorphisms;  // centre-edge-preserving
};

const std::vector<SubgraphStructure>& structures();

struct WeightedSubgraph {
  int structure = 0;
  std::array<int, 5> weights{};  // +-1 per edge, canonical under the automorphisms

  ProblemGraph graph() const;
  friend bool operator<(const WeightedSubgraph& a, const WeightedSubgraph& b) {
    return std::tie(a.structure, a.weights) < std::tie(b.structure, b.weights);
  }
  friend bool operator==(const WeightedSubgraph&, const WeightedSubgraph&) = default;
};

/// Lexicographically smallest weight vector over the structure's
/// centre-edge-preserving automorphism orbit.
WeightedSubgraph canonicalize(int structure, const std::array<int, 5>& weights);

/// All 96 raw weightings reduced modulo symmetry. The catalogue size is a
/// frozen regression constant (46: 12 + 20 + 14 per structure).
std::vector<WeightedSubgraph> enumerate_subgraphs();

/// Best agreement fraction of the 5-edge environment (exact rational, /5).
Rational c_lambda(const WeightedSubgraph& lam);

/// Depth-1 QAOA on the environment alone (standard r=1 mixer); returns the
/// centre edge's expectation w * <S>. d = 1 is the deterministic value w.
double f_lambda(const WeightedSubgraph& lam, int d, double gamma, double beta);

/// Classifies the depth-1 environment of an edge of a 3-regular graph.
WeightedSubgraph classify_edge_environment(const ProblemGraph& g, int edge_index);

struct FTable {
  std::vector<WeightedSubgraph> catalogue;
  std::map<int, std::vector<double>> f;  // d in {1,2,3,4} -> per-lambda values
  std::vector<Rational> c;
};

struct BoundParams {
  std::map<int, std::array<double, 2>> angles;  // d -> (gamma_d, beta_d), d >= 2
};

/// Angles at which the depth-1 bounds below are certified (frozen; the d >= 2
/// entries reproduce the published analysis after mapping into this library's
/// gate conventions: cost-phase sign absorbed as gamma -> pi - gamma on
/// odd-edge-count environments, mixer normalization absorbed as beta -> 2 beta).
BoundParams certification_params();

FTable build_f_table(const BoundParams& params);

enum class Relaxation { lp1, lp2 };

/// The minimax relaxation over environment frequencies n_lambda:
/// minimize alpha subject to
///   sum_lambda n_lambda fhat_{d,lambda} <= (3/2) alpha   for d in {1,2,3,4},
///   sum_{g2} n - 4 sum_{g3} n >= 0,  sum_{g2} n <= 1,  sum n = 3/2,  n >= 0,
/// with fhat = (1+f)/2 the centre-edge agreement fraction. lp2 keeps only
/// environments admitting a perfect clustering (c = 1).
LPProblem build_lp(Relaxation rel, const FTable& table);

struct BoundResult {
  double alpha = 0.0;
  std::map<WeightedSubgraph, double> hardest;  // nonzero n_lambda at the optimum
  LPSolution lp;
};

BoundResult solve_bound(Relaxation rel, const FTable& table);

struct IterationRound {
  BoundParams params;
  double lp_alpha = 0.0;
  double reoptimized_alpha = 0.0;  // Eq-style per-d maximization on the hardest graph
  std::map<WeightedSubgraph, double> hardest;
};

/// Alternates the LP solve with per-d angle re-optimization on the hardest
/// graph. Not required to converge; every round yields a valid bound.
std::vector<IterationRound> iterative_bound(const BoundParams& init, int rounds,
                                            Relaxation rel,
                                            const strategies::OptimizerConfig& cfg);

/// max_d over (gamma,beta)-optimized agreement ratio on a fixed mixture of
/// environments; multi-start count per d is configurable.
double reoptimize_hardest(const std::map<WeightedSubgraph, double>& hardest,
                          const std::vector<Rational>& c_of,
                          const std::vector<WeightedSubgraph>& catalogue,
                          const strategies::OptimizerConfig& cfg, int starts,
                          BoundParams* best_params);

}  // namespace qdcc::bounds
