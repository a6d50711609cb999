#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "qdcc/instances.hpp"
#include "qdcc/rng.hpp"

namespace qdcc::sim {

using cxd = std::complex<double>;

/// Dense qudit register. Basis states are ordered lexicographically with
/// qudit 0 most significant: index(z) = sum_u z_u * d^(n-1-u).
struct StateVector {
  int d = 2;
  int n = 0;
  std::vector<cxd> amps;

  std::size_t dim() const { return amps.size(); }
  double norm() const;
};

/// Capacity guard: d^n amplitudes, at most 10^7.
std::size_t check_capacity(int n, int d);

StateVector uniform_state(int n, int d);

/// Objective eigenvalues per basis state: sum_e w_e * s_e(z) with s_e = +1
/// when the endpoints share a label and -1 otherwise. Maximizing this
/// diagonal maximizes agreements - disagreements.
struct CostDiagonal {
  int d = 2;
  int n = 0;
  std::vector<double> values;
  bool integral = false;  // set by cost_diagonal; enables the phase lookup table
  double vmax = 0.0;
};

CostDiagonal cost_diagonal(const ProblemGraph& g, int d);

enum class MixerVariant { standard, hardware_r1, hardware_r2 };

struct MixerSpec {
  MixerVariant variant = MixerVariant::standard;
  int d = 2;
  int r = 1;  // coupling range, standard variant only
};

MixerVariant mixer_from_name(const std::string& s);
std::string mixer_name(const MixerSpec& spec);

/// d x d single-qudit coupling Hamiltonian.
///  - standard(r): sum_{i=1..r} (S^i + S^-i) with S the cyclic level shift;
///    periodic couplings, entries double where i and d-i coincide (so d=2
///    gives [[0,2],[2,0]], which only rescales beta).
///  - hardware_r1: ones on the first off-diagonals, open boundary.
///  - hardware_r2: ones on the first and second off-diagonals, open boundary.
Eigen::MatrixXd mixer_matrix(const MixerSpec& spec);

struct QaoaParams {
  std::vector<double> gammas;
  std::vector<double> betas;

  int depth() const { return static_cast<int>(gammas.size()); }
};

/// amp_z *= exp(-i * gamma * diag_z). Norm preserving.
void apply_cost(StateVector& s, const CostDiagonal& diag, double gamma);

/// exp(-i * beta * h) applied to every qudit, h from mixer_matrix. The
/// exponential is exact (Hermitian eigendecomposition).
void apply_mixer(StateVector& s, const MixerSpec& spec, double beta);

/// Applies a dense d x d matrix to one qudit of the register.
void apply_single_qudit(StateVector& s, const Eigen::MatrixXcd& u, int qudit);

/// p alternating cost/mixer layers on the uniform state.
StateVector run_qaoa(const ProblemGraph& g, int d, const QaoaParams& params,
                     const MixerSpec& spec);

/// F = sum_z |amp_z|^2 diag_z.
double expectation(const StateVector& s, const CostDiagonal& diag);

/// Expectation of a single edge term: w * <S_(u,v)>.
double edge_expectation(const StateVector& s, const Edge& e);

/// (F + |E|) / (2 C*).
double approx_ratio(double f, int n_edges, long long c_star);

struct SampleResult {
  std::map<std::uint64_t, int> counts;  // basis index -> occurrences
  int shots = 0;
  double best_value = 0.0;  // max cost-diagonal value among sampled states
};

SampleResult sample(const StateVector& s, const CostDiagonal& diag, int shots, Rng& rng);

/// Decodes basis index to per-qudit labels.
Assignment decode_index(std::uint64_t z, int n, int d);

}  // namespace qdcc::sim
