#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

#include "qdcc/simulator.hpp"

namespace qdcc::gates {

using cxd = std::complex<double>;

/// Single-atom level layout used by the two-atom gate constructions:
/// qudit levels 0..d-1, Rydberg levels r_l at d+l, optional auxiliary
/// (non-Rydberg) level at 2d.
struct ExtendedSpace {
  int d = 2;
  bool with_aux = false;

  int atom_dim() const { return 2 * d + (with_aux ? 1 : 0); }
  int qudit(int l) const { return l; }
  int rydberg(int l) const { return d + l; }
  int aux() const { return 2 * d; }
  bool is_rydberg(int level) const { return level >= d && level < 2 * d; }
  int pair_dim() const { return atom_dim() * atom_dim(); }
};

struct GateMatrix {
  Eigen::MatrixXcd m;
  std::string label;

  int dim() const { return static_cast<int>(m.rows()); }
};

/// Resonantly driven two-level pulse, theta = 2 t |Omega|:
/// [[cos t/2, -i e^{i phi} sin t/2], [-i e^{-i phi} sin t/2, cos t/2]].
Eigen::Matrix2cd u2level(double theta, double phi);

/// Lambda-scheme unitary with zero residual Rydberg population, in the
/// {|l>, |l'>, |r>} basis. cos(theta/2) = (|O0|^2-|O1|^2)/O^2,
/// sin(theta/2) e^{i phi} = 2 O0 conj(O1)/O^2, overall factor -1.
Eigen::Matrix3cd u3level(cxd omega0, cxd omega1);

/// diag(e^{i phi}, e^{-i phi}).
Eigen::Matrix2cd phase_gate(double phi);

/// The same phase gate as a product of two pi-pulses, u2(pi,phi2)*u2(pi,phi1);
/// equals phase_gate(phi2-phi1) up to a global phase.
Eigen::Matrix2cd phase_gate_product(double phi1, double phi2);

/// X on a level pair: u2level(pi, 0).
Eigen::Matrix2cd pauli_x();

/// Target diagonal CP(gamma): e^{-i gamma} on equal-label basis states.
Eigen::MatrixXcd cp_target(int d, double gamma);

/// Blockade-based CP built from per-level controlled-phase blocks applied
/// symmetrically from both atoms; lives on the (2d)^2 two-atom space.
GateMatrix cp_symmetric(int d, double gamma);

/// CP via the CX ladder plus one central phase pulse through the auxiliary
/// level; lives on the (2d+1)^2 space. Ladder steps must couple levels at
/// distance <= 2.
GateMatrix cp_chain(int d, double gamma);

/// d^2 x d^2 qudit-subspace block of a two-atom gate on an extended space.
Eigen::MatrixXcd qudit_block(const GateMatrix& g, const ExtendedSpace& space);

/// Max residual matrix element mapping qudit-subspace inputs to non-qudit
/// levels (should vanish for every complete gate).
double rydberg_leakage(const GateMatrix& g, const ExtendedSpace& space);

/// Single-qudit quantum Fourier transform, entries e^{i 2 pi l l'/d}/sqrt(d).
Eigen::MatrixXcd qft_d(int d);

/// Two-qudit controlled-Z: phase e^{i 2 pi l lbar / d} on |l>|lbar>.
Eigen::MatrixXcd cz_d(int d);

/// Two-qudit controlled-X, QFT CZ QFT with both QFTs on the target slot
/// (0 or 1); maps the target level to -(l + lbar) mod d.
Eigen::MatrixXcd cx_d(int d, int target_slot);

/// Exchange gate from three CX applications (slots 0,1,0).
Eigen::MatrixXcd swap_d(int d);

/// Cascade of two-level rotations taking |0> to the uniform superposition.
Eigen::MatrixXcd init_sequence(int d);

/// exp(-i beta h) for the open-boundary coupling Hamiltonians (r = 1 or 2);
/// shares the matrix definition with the simulator's mixers.
Eigen::MatrixXcd hardware_mixer_unitary(int d, int r, double beta);

/// True if m^dagger m = 1 within tol (max norm).
bool is_unitary(const Eigen::MatrixXcd& m, double tol = 1e-10);

/// min over a global phase c (|c| = 1) of max|c*a - b|.
double phase_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace qdcc::gates
