#include "qdcc/gates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qdcc::gates {

namespace {

constexpr double kPi = std::numbers::pi;

/// Embeds a small unitary acting on a subset of one atom's levels into the
/// two-atom space. When `blockaded` is set, partner components sitting in a
/// Rydberg level freeze the drive (the pulse acts as identity there).
Eigen::MatrixXcd embed_pulse(const ExtendedSpace& space, int atom,
                             const std::vector<int>& levels,
                             const Eigen::MatrixXcd& u, bool blockaded) {
  const int da = space.atom_dim();
  Eigen::MatrixXcd self = Eigen::MatrixXcd::Identity(da, da);
  for (std::size_t i = 0; i < levels.size(); ++i)
    for (std::size_t j = 0; j < levels.size(); ++j)
      self(levels[i], levels[j]) = u(static_cast<int>(i), static_cast<int>(j));

  Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(space.pair_dim(), space.pair_dim());
  for (int p = 0; p < da; ++p) {
    const bool frozen = blockaded && space.is_rydberg(p);
    for (int a = 0; a < da; ++a)
      for (int b = 0; b < da; ++b) {
        const cxd v = frozen ? (a == b ? cxd(1.0) : cxd(0.0)) : self(a, b);
        if (v == cxd(0.0)) continue;
        const int row = atom == 0 ? a * da + p : p * da + a;
        const int col = atom == 0 ? b * da + p : p * da + b;
        full(row, col) = v;
      }
  }
  return full;
}

/// X pi-pulse coupling one atom's level pair (a, b); blockaded when the pair
/// touches a Rydberg level.
Eigen::MatrixXcd x_pulse(const ExtendedSpace& space, int atom, int la, int lb) {
  const bool ryd = space.is_rydberg(la) || space.is_rydberg(lb);
  return embed_pulse(space, atom, {la, lb}, u2level(kPi, 0.0), ryd);
}

/// Phase gate as the two-pulse product on one atom's level pair.
Eigen::MatrixXcd p_pulse(const ExtendedSpace& space, int atom, int la, int lb,
                         double phi) {
  const bool ryd = space.is_rydberg(la) || space.is_rydberg(lb);
  return embed_pulse(space, atom, {la, lb}, phase_gate_product(0.0, phi), ryd);
}

/// Per-level controlled-phase block: X on the control's (l, r_l), the phase
/// pulse pair on the target's (l, r_l), X back.
Eigen::MatrixXcd cu_block(const ExtendedSpace& space, int target, int control,
                          int level, double gamma) {
  const int l = space.qudit(level);
  const int rl = space.rydberg(level);
  const Eigen::MatrixXcd xc = x_pulse(space, control, l, rl);
  const Eigen::MatrixXcd pt = p_pulse(space, target, l, rl, gamma / 2.0);
  return xc * pt * xc;
}

/// CX with the target pair (lt, lt') swapped when the control is NOT in lc;
/// the target transition is driven through its Rydberg level (Lambda scheme).
Eigen::MatrixXcd cx_block(const ExtendedSpace& space, int target, int control,
                          int lt, int lt2, int lc) {
  if (std::abs(lt - lt2) > 2)
    throw std::invalid_argument("cp_chain: ladder step exceeds level distance 2");
  const Eigen::MatrixXcd xc = x_pulse(space, control, space.qudit(lc), space.rydberg(lc));
  const Eigen::MatrixXcd lam = embed_pulse(
      space, target, {space.qudit(lt), space.qudit(lt2), space.rydberg(lt)},
      u3level(cxd(1.0), cxd(1.0)), /*blockaded=*/true);
  return xc * lam * xc;
}

}  // namespace

Eigen::Matrix2cd u2level(double theta, double phi) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  Eigen::Matrix2cd u;
  u << cxd(c, 0.0), cxd(0.0, -1.0) * std::polar(1.0, phi) * s,
      cxd(0.0, -1.0) * std::polar(1.0, -phi) * s, cxd(c, 0.0);
  return u;
}

Eigen::Matrix3cd u3level(cxd omega0, cxd omega1) {
  const double o0 = std::abs(omega0), o1 = std::abs(omega1);
  const double o2 = o0 * o0 + o1 * o1;
  if (o2 <= 0.0) throw std::invalid_argument("u3level: zero drive");
  const double cth = (o0 * o0 - o1 * o1) / o2;
  const cxd sth = 2.0 * omega0 * std::conj(omega1) / o2;
  Eigen::Matrix3cd u;
  u << cth, sth, 0.0, std::conj(sth), -cth, 0.0, 0.0, 0.0, 1.0;
  return -u;
}

Eigen::Matrix2cd phase_gate(double phi) {
  Eigen::Matrix2cd p = Eigen::Matrix2cd::Zero();
  p(0, 0) = std::polar(1.0, phi);
  p(1, 1) = std::polar(1.0, -phi);
  return p;
}

Eigen::Matrix2cd phase_gate_product(double phi1, double phi2) {
  return u2level(kPi, phi2) * u2level(kPi, phi1);
}

Eigen::Matrix2cd pauli_x() { return u2level(kPi, 0.0); }

Eigen::MatrixXcd cp_target(int d, double gamma) {
  Eigen::MatrixXcd cp = Eigen::MatrixXcd::Identity(d * d, d * d);
  for (int l = 0; l < d; ++l) cp(l * d + l, l * d + l) = std::polar(1.0, -gamma);
  return cp;
}

GateMatrix cp_symmetric(int d, double gamma) {
  if (d < 2) throw std::invalid_argument("cp_symmetric: d >= 2 required");
  const ExtendedSpace space{d, /*with_aux=*/false};
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Identity(space.pair_dim(), space.pair_dim());
  for (int l = 0; l < d; ++l) {
    g = cu_block(space, /*target=*/0, /*control=*/1, l, gamma) * g;
    g = cu_block(space, /*target=*/1, /*control=*/0, l, gamma) * g;
  }
  return {std::move(g), "cp_symmetric(d=" + std::to_string(d) + ")"};
}

GateMatrix cp_chain(int d, double gamma) {
  if (d < 2) throw std::invalid_argument("cp_chain: d >= 2 required");
  const ExtendedSpace space{d, /*with_aux=*/true};
  // Ladder folding every equal-label pair onto target level 0; step l swaps
  // target levels (l, l+1) unless the control sits at l.
  Eigen::MatrixXcd ladder =
      Eigen::MatrixXcd::Identity(space.pair_dim(), space.pair_dim());
  for (int l = d - 2; l >= 0; --l)
    ladder = cx_block(space, /*target=*/0, /*control=*/1, l, l + 1, l) * ladder;
  // Central phase on target level 0 through the auxiliary level: pair order
  // (aux, 0) puts e^{-i gamma} on level 0. The pi-pulse product carries a
  // global -1 on the driven pair, which is conditional here (only folded
  // states reach level 0); the extra pi in the drive phase cancels it.
  const Eigen::MatrixXcd phase =
      embed_pulse(space, /*atom=*/0, {space.aux(), space.qudit(0)},
                  phase_gate_product(0.0, gamma + std::numbers::pi),
                  /*blockaded=*/false);
  Eigen::MatrixXcd g = ladder.adjoint() * phase * ladder;
  return {std::move(g), "cp_chain(d=" + std::to_string(d) + ")"};
}

Eigen::MatrixXcd qudit_block(const GateMatrix& g, const ExtendedSpace& space) {
  const int d = space.d;
  const int da = space.atom_dim();
  Eigen::MatrixXcd block(d * d, d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e)
          block(a * d + b, c * d + e) = g.m(a * da + b, c * da + e);
  return block;
}

double rydberg_leakage(const GateMatrix& g, const ExtendedSpace& space) {
  const int d = space.d;
  const int da = space.atom_dim();
  double leak = 0.0;
  for (int c = 0; c < d; ++c)
    for (int e = 0; e < d; ++e) {
      const int col = c * da + e;
      for (int a = 0; a < da; ++a)
        for (int b = 0; b < da; ++b) {
          if (a < d && b < d) continue;
          leak = std::max(leak, std::abs(g.m(a * da + b, col)));
        }
    }
  return leak;
}

Eigen::MatrixXcd qft_d(int d) {
  if (d < 1) throw std::invalid_argument("qft_d: d >= 1 required");
  Eigen::MatrixXcd f(d, d);
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  for (int lp = 0; lp < d; ++lp)
    for (int l = 0; l < d; ++l)
      f(lp, l) = std::polar(s, 2.0 * kPi * l * lp / d);
  return f;
}

Eigen::MatrixXcd cz_d(int d) {
  Eigen::MatrixXcd cz = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (int l = 0; l < d; ++l)
    for (int lb = 0; lb < d; ++lb)
      cz(l * d + lb, l * d + lb) = std::polar(1.0, 2.0 * kPi * l * lb / d);
  return cz;
}

Eigen::MatrixXcd cx_d(int d, int target_slot) {
  if (target_slot != 0 && target_slot != 1)
    throw std::invalid_argument("cx_d: target slot must be 0 or 1");
  const Eigen::MatrixXcd f = qft_d(d);
  const Eigen::MatrixXcd one = Eigen::MatrixXcd::Identity(d, d);
  Eigen::MatrixXcd fq(d * d, d * d);
  // kron with the QFT on the target slot
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e)
          fq(a * d + b, c * d + e) = target_slot == 0 ? f(a, c) * one(b, e)
                                                      : one(a, c) * f(b, e);
  return fq * cz_d(d) * fq;
}

Eigen::MatrixXcd swap_d(int d) {
  const Eigen::MatrixXcd g0 = cx_d(d, 0);
  const Eigen::MatrixXcd g1 = cx_d(d, 1);
  return g0 * g1 * g0;
}

Eigen::MatrixXcd init_sequence(int d) {
  if (d < 1) throw std::invalid_argument("init_sequence: d >= 1 required");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(d, d);
  for (int l = 1; l <= d - 1; ++l) {
    const double theta = 2.0 * std::acos(1.0 / std::sqrt(static_cast<double>(d - (l - 1))));
    const Eigen::Matrix2cd u = u2level(theta, kPi / 2.0).adjoint();
    Eigen::MatrixXcd step = Eigen::MatrixXcd::Identity(d, d);
    step(l - 1, l - 1) = u(0, 0);
    step(l - 1, l) = u(0, 1);
    step(l, l - 1) = u(1, 0);
    step(l, l) = u(1, 1);
    m = step * m;
  }
  return m;
}

Eigen::MatrixXcd hardware_mixer_unitary(int d, int r, double beta) {
  if (r != 1 && r != 2)
    throw std::invalid_argument("hardware_mixer_unitary: r must be 1 or 2");
  sim::MixerSpec spec;
  spec.d = d;
  spec.variant = r == 1 ? sim::MixerVariant::hardware_r1 : sim::MixerVariant::hardware_r2;
  const Eigen::MatrixXd h = sim::mixer_matrix(spec);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  Eigen::VectorXcd phases(d);
  for (int i = 0; i < d; ++i) phases(i) = std::polar(1.0, -beta * es.eigenvalues()(i));
  return es.eigenvectors().cast<cxd>() * phases.asDiagonal() *
         es.eigenvectors().transpose().cast<cxd>();
}

bool is_unitary(const Eigen::MatrixXcd& m, double tol) {
  const Eigen::MatrixXcd r =
      m.adjoint() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  return r.cwiseAbs().maxCoeff() <= tol;
}

double phase_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("phase_distance: shape mismatch");
  cxd tr = (a.adjoint() * b).trace();
  cxd c;
  if (std::abs(tr) > 1e-12) {
    c = tr / std::abs(tr);
  } else {
    // degenerate overlap; align on the largest element of b
    Eigen::Index i = 0, j = 0;
    b.cwiseAbs().maxCoeff(&i, &j);
    c = std::abs(a(i, j)) > 1e-12 ? b(i, j) / a(i, j) : cxd(1.0);
    c /= std::abs(c);
  }
  return (c * a - b).cwiseAbs().maxCoeff();
}

}  // namespace qdcc::gates
