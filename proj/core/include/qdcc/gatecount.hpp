#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qdcc/rational.hpp"

namespace qdcc::gatecount {

enum class Topology { chain_1d, triangular_2d };
enum class EncodingKind { qudit, binary };
enum class CpForm { symmetric, chain };

Topology topology_from_name(const std::string& s);
EncodingKind encoding_from_name(const std::string& s);
std::string topology_name(Topology t);
std::string encoding_name(EncodingKind e);

struct Encoding {
  EncodingKind kind = EncodingKind::qudit;
  int d = 4;

  /// Qubits per e-dit, ceil(log2 d).
  int q() const;
};

/// Cost of the two-qudit controlled phase in CX units: 2d for the symmetric
/// construction, 2d-2 for the chain form (the default everywhere else).
int cp_cost(int d, CpForm form);

/// Cost of the qudit SWAP: 3(d-1).
int swap_d_cost(int d);

struct BinaryUnits {
  Rational edit_swap;        // [SWAP~] in CX units
  Rational intra_swap;       // n_intra * [SWAP_2] in CX units
  int multicontrol = 0;      // [C^(q-1)(U)] in CX units
};

/// Per-unit binary-encoding costs for q in {2,3,4}. 2D values are the
/// weighted averages over the e-dit tiling's neighbour leg counts and may be
/// fractional; they are kept as exact rationals.
BinaryUnits binary_unit_costs(int q, Topology topo);

struct CostBreakdown {
  EncodingKind encoding = EncodingKind::qudit;
  Topology topology = Topology::chain_1d;
  int n = 0;
  int d = 0;
  int q = 0;                       // binary only
  Rational cp_unit;                // cost of one (effective) CP in CX units
  Rational swap_unit;              // cost of one inter-(e)dit SWAP
  Rational intra_swap_unit;        // binary only
  int multicontrol_unit = 0;       // binary only
  long long n_inter_swaps = 0;     // schedule swap count
  bool inter_swaps_subleading = false;  // 2D: reported as O(N), schedule-derived
  Rational per_edge_coeff;         // coefficient of |E| in C_tot
  Rational per_n_coeff;            // magnitude of the lower-order term
  int per_n_sign = -1;             // -1 in 1D (absorbed), +1 in 2D (added)
  long long n_edges = 0;           // complete graph: N(N-1)/2
  Rational c_tot;                  // exact total for this schedule
};

/// Exact 2-gate count for solving one cost layer of a complete-graph
/// instance, per encoding and processor topology. Binary encodings support
/// q = log2 d in {2,3,4} only.
CostBreakdown total_cost(int n, int d, EncodingKind enc, Topology topo);

/// Reference effective-CP costs for the q != log2(d) binary constructions
/// (d = 3,5,6,7); bookkeeping constants only, no circuits are built for them.
extern const std::vector<std::pair<int, int>> kBinaryCpNonPow2;

struct SwapSchedule {
  int n = 0;
  std::vector<std::vector<std::pair<int, int>>> layers;  // position pairs, disjoint per layer
  long long total_swaps = 0;
  std::set<std::pair<int, int>> met_pairs;  // logical pairs that were adjacent at some point
};

/// Alternating odd/even nearest-neighbour swap layers on a line of n qudits:
/// n-2 layers, (n-1)(n-2)/2 swaps, after which every pair has been adjacent.
SwapSchedule swap_schedule_1d(int n);

/// (min swaps, min layers) for all-to-all adjacency on a line:
/// ceil((C(n,2)-(n-1))/2) and ceil(n/2)-1.
std::pair<long long, int> swap_lower_bounds(int n);

}  // namespace qdcc::gatecount
