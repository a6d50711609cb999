#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qdcc/opensys.hpp"

using namespace qdcc;
using namespace qdcc::opensys;

TEST_SUITE("opensys") {

TEST_CASE("fidelity basics") {
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(4), b = Eigen::VectorXcd::Zero(4);
  a(0) = 1;
  b(1) = 1;
  const DensityMatrix ra = a * a.adjoint(), rb = b * b.adjoint();
  CHECK(fidelity(ra, ra) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fidelity(ra, rb) == doctest::Approx(0.0).epsilon(1e-9));

  const DensityMatrix mixed = Eigen::MatrixXcd::Identity(4, 4) / 4.0;
  CHECK(fidelity(ra, mixed) == doctest::Approx(0.5).epsilon(1e-10));  // 1/sqrt(k)

  // symmetry on a random PSD pair
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Random(4, 4);
  DensityMatrix r1 = m * m.adjoint();
  r1 /= r1.trace().real();
  Eigen::MatrixXcd m2 = Eigen::MatrixXcd::Random(4, 4);
  DensityMatrix r2 = m2 * m2.adjoint();
  r2 /= r2.trace().real();
  CHECK(fidelity(r1, r2) == doctest::Approx(fidelity(r2, r1)).epsilon(1e-10));

  DensityMatrix bad = ra;
  bad(3, 3) = -1e-6;
  CHECK_THROWS_AS(fidelity(bad, ra), std::invalid_argument);
}

TEST_CASE("free decay of a rydberg-populated state") {
  LindbladModel m = cp_pulse_model(0.0, 1.0, 20.0, 0.25);
  m.segments.clear();
  m.segments.push_back({Eigen::MatrixXcd::Zero(25, 25), 3.0});  // H = 0 for t = 3
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(25);
  psi(2 * 5 + 0) = 1.0;  // atom 0 in |r0>, atom 1 in |0>
  EvolveOptions opts;
  opts.steps_per_segment = 600;
  const auto res = evolve(m, psi * psi.adjoint(), opts);
  const double pop_r = std::real(res.rho(2 * 5 + 0, 2 * 5 + 0));
  CHECK(pop_r == doctest::Approx(std::exp(-0.25 * 3.0)).epsilon(1e-6));
  const double pop_aux = std::real(res.rho(4 * 5 + 0, 4 * 5 + 0));
  CHECK(pop_aux == doctest::Approx(1.0 - std::exp(-0.25 * 3.0)).epsilon(1e-6));
  CHECK(res.max_trace_drift < 1e-8);
}

TEST_CASE("closed-system gate fidelity at the default blockade") {
  LindbladModel m = cp_pulse_model(std::numbers::pi / 2, 1.0, 20.0, 0.0);
  EvolveOptions opts;
  opts.steps_per_segment = 1600;
  const auto res = evolve(m, isotropic_input(), opts);
  CHECK(res.max_trace_drift < 1e-8);
  const double f = fidelity(ideal_output(std::numbers::pi / 2), res.rho);
  CHECK(f >= 1.0 - 1e-4);

  // halving the step leaves the fidelity unchanged at the 1e-7 level
  EvolveOptions fine = opts;
  fine.steps_per_segment = 3200;
  const auto res2 = evolve(m, isotropic_input(), fine);
  const double f2 = fidelity(ideal_output(std::numbers::pi / 2), res2.rho);
  CHECK(std::abs(f - f2) < 1e-7);
}

TEST_CASE("decay monotonicity and the projected-subspace decay law") {
  const double gamma_cp = std::numbers::pi / 2;
  const DensityMatrix rho_id = ideal_output(gamma_cp);
  EvolveOptions opts;
  opts.steps_per_segment = 1600;

  double prev = 1.1;
  for (const double rate : {0.004, 0.02, 0.06}) {
    LindbladModel m = cp_pulse_model(gamma_cp, 1.0, 20.0, rate);
    const auto res = evolve(m, isotropic_input(), opts);
    const double f = fidelity(rho_id, res.rho);
    CHECK(f < prev);
    prev = f;

    if (rate == 0.004) {
      // small decay: the qudit block is the rescaled ideal state
      Eigen::MatrixXcd block(4, 4), ideal_block(4, 4);
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          for (int c = 0; c < 2; ++c)
            for (int e = 0; e < 2; ++e) {
              block(a * 2 + b, c * 2 + e) = res.rho(a * 5 + b, c * 5 + e);
              ideal_block(a * 2 + b, c * 2 + e) = rho_id(a * 5 + b, c * 5 + e);
            }
      const double scale = std::exp(-rate * m.t_cp);
      const double dev = (block - scale * ideal_block).cwiseAbs().maxCoeff() /
                         ideal_block.cwiseAbs().maxCoeff();
      CHECK(dev <= 0.05);
    }
  }
}

TEST_CASE("f_err is affine in p2") {
  SuiteOptions opts;
  opts.gamma_grid = {0.004, 0.02, 0.06};
  opts.evolve.steps_per_segment = 800;
  const auto rep = fidelity_suite(opts);
  REQUIRE(rep.p2.size() == 3);
  for (std::size_t i = 0; i < rep.p2.size(); ++i)
    CHECK(rep.f_err[i] == 1.0 - rep.f_err_slope * rep.p2[i]);  // exact by construction
  // slope equals the direct average over the 15 non-identity error unitaries
  CHECK(rep.f_err_slope == doctest::Approx(0.8).epsilon(1e-10));
  CHECK(rep.gamma0_fidelity >= 1.0 - 1e-4);
  for (const double f : rep.f_open) {
    CHECK(f >= 0.0);
    CHECK(f <= 1.0 + 1e-9);
  }
  for (std::size_t i = 0; i < rep.f_err_open.size(); ++i) {
    CHECK(rep.f_err_open[i] >= 0.0);
    CHECK(rep.f_err_open[i] <= 1.0 + 1e-9);
  }
}

TEST_CASE("evolve input validation") {
  LindbladModel m = cp_pulse_model(0.0, 1.0, 20.0, 0.0);
  const DensityMatrix bad = Eigen::MatrixXcd::Identity(25, 25);  // trace 25
  CHECK_THROWS_AS(evolve(m, bad), std::invalid_argument);
}

}  // TEST_SUITE
