#include <set>

#include "doctest.h"
#include "qdcc/gatecount.hpp"

using namespace qdcc;
using namespace qdcc::gatecount;

TEST_SUITE("gatecount") {

TEST_CASE("cp and swap unit costs") {
  CHECK(cp_cost(4, CpForm::chain) == 6);
  CHECK(cp_cost(8, CpForm::chain) == 14);
  CHECK(cp_cost(2, CpForm::symmetric) == 4);  // the qubit-specific reduction to d is documented, not defaulted
  CHECK(swap_d_cost(4) == 9);
  CHECK(swap_d_cost(8) == 21);
  CHECK(swap_d_cost(16) == 45);
}

TEST_CASE("binary unit costs") {
  const auto u1 = binary_unit_costs(3, Topology::chain_1d);
  CHECK(u1.edit_swap == Rational(27));
  CHECK(u1.intra_swap == Rational(54));
  CHECK(u1.multicontrol == 11);

  const auto u2 = binary_unit_costs(4, Topology::triangular_2d);
  CHECK(u2.edit_swap == Rational(28));
  CHECK(u2.intra_swap == Rational(38));
  CHECK(u2.multicontrol == 19);

  const auto u3 = binary_unit_costs(2, Topology::chain_1d);
  CHECK(u3.edit_swap == Rational(12));
  CHECK(u3.intra_swap == Rational(18));
  CHECK(u3.multicontrol == 1);

  CHECK_THROWS_AS(binary_unit_costs(5, Topology::chain_1d), std::invalid_argument);
}

TEST_CASE("per-edge coefficients") {
  // qudit: 1D {15, 35, 75}, 2D {6, 14, 30}
  const int want_q1[3] = {15, 35, 75}, want_q2[3] = {6, 14, 30};
  const int want_b1[3] = {35, 98, 213}, want_b2[3] = {17, 29, 65};
  const int ds[3] = {4, 8, 16};
  for (int i = 0; i < 3; ++i) {
    CHECK(total_cost(10, ds[i], EncodingKind::qudit, Topology::chain_1d).per_edge_coeff ==
          Rational(want_q1[i]));
    CHECK(total_cost(10, ds[i], EncodingKind::qudit, Topology::triangular_2d).per_edge_coeff ==
          Rational(want_q2[i]));
    CHECK(total_cost(10, ds[i], EncodingKind::binary, Topology::chain_1d).per_edge_coeff ==
          Rational(want_b1[i]));
    CHECK(total_cost(10, ds[i], EncodingKind::binary, Topology::triangular_2d).per_edge_coeff ==
          Rational(want_b2[i]));
  }
}

TEST_CASE("qudit 1d closed form") {
  // C_tot = (5N-6)(N-1)(d-1)/2
  CHECK(total_cost(10, 4, EncodingKind::qudit, Topology::chain_1d).c_tot == Rational(594));
  for (int n : {3, 5, 8, 12})
    for (int d : {3, 4, 8}) {
      const auto cb = total_cost(n, d, EncodingKind::qudit, Topology::chain_1d);
      CHECK(cb.c_tot == Rational((5LL * n - 6) * (n - 1) * (d - 1), 2));
    }
}

TEST_CASE("per-edge identity for qudits in 1d") {
  for (int d = 2; d <= 16; ++d) {
    const auto cb = total_cost(6, d, EncodingKind::qudit, Topology::chain_1d);
    CHECK(cb.per_edge_coeff == Rational(5 * (d - 1)));
    CHECK(cb.cp_unit + cb.swap_unit == cb.per_edge_coeff);
  }
}

TEST_CASE("qudit per-edge cost dominates binary") {
  for (const auto topo : {Topology::chain_1d, Topology::triangular_2d})
    for (const int d : {4, 8, 16}) {
      const auto q = total_cost(8, d, EncodingKind::qudit, topo).per_edge_coeff;
      const auto b = total_cost(8, d, EncodingKind::binary, topo).per_edge_coeff;
      CHECK(q <= b);
    }
  // the swap units alone flip once: the 2D d=16 e-dit swap undercuts the qudit one
  CHECK(total_cost(8, 16, EncodingKind::binary, Topology::triangular_2d).swap_unit <
        total_cost(8, 16, EncodingKind::qudit, Topology::triangular_2d).swap_unit);
}

TEST_CASE("binary rejects unsupported d") {
  CHECK_THROWS_AS(total_cost(6, 6, EncodingKind::binary, Topology::chain_1d),
                  std::invalid_argument);
  CHECK_THROWS_AS(total_cost(6, 32, EncodingKind::binary, Topology::chain_1d),
                  std::invalid_argument);
}

TEST_CASE("reference constants for non-power-of-two cp circuits") {
  CHECK(kBinaryCpNonPow2.size() == 4);
  CHECK(kBinaryCpNonPow2[0] == std::pair{3, 70});
  CHECK(kBinaryCpNonPow2[1] == std::pair{5, 206});
}

TEST_CASE("swap schedule basics") {
  const auto s4 = swap_schedule_1d(4);
  CHECK(s4.layers.size() == 2);
  CHECK(s4.total_swaps == 3);
  CHECK(s4.met_pairs.size() == 6);

  const auto s2 = swap_schedule_1d(2);
  CHECK(s2.layers.empty());
  CHECK(s2.total_swaps == 0);
  CHECK(s2.met_pairs.size() == 1);

  const auto s9 = swap_schedule_1d(9);
  CHECK(s9.layers.size() == 7);
  CHECK(s9.total_swaps == 28);
}

TEST_CASE("swap schedule replay meets every pair") {
  for (int n = 2; n <= 30; ++n) {
    const auto s = swap_schedule_1d(n);
    CHECK(s.layers.size() == static_cast<std::size_t>(std::max(0, n - 2)));
    CHECK(s.total_swaps == static_cast<long long>(n - 1) * (n - 2) / 2);
    CHECK(s.met_pairs.size() == static_cast<std::size_t>(n) * (n - 1) / 2);
    // layers use disjoint positions
    for (const auto& layer : s.layers) {
      std::set<int> used;
      for (const auto& [a, b] : layer) {
        CHECK(used.insert(a).second);
        CHECK(used.insert(b).second);
        CHECK(b == a + 1);
      }
    }
  }
}

TEST_CASE("lower bounds") {
  CHECK(swap_lower_bounds(6) == std::pair{5LL, 2});
  CHECK(swap_lower_bounds(2) == std::pair{0LL, 0});
  for (int n = 2; n <= 30; ++n) {
    const auto s = swap_schedule_1d(n);
    const auto [min_swaps, min_layers] = swap_lower_bounds(n);
    CHECK(s.total_swaps >= min_swaps);
    CHECK(static_cast<int>(s.layers.size()) >= min_layers);
  }
}

TEST_CASE("encoding q") {
  CHECK(Encoding{EncodingKind::binary, 4}.q() == 2);
  CHECK(Encoding{EncodingKind::binary, 8}.q() == 3);
  CHECK(Encoding{EncodingKind::binary, 10}.q() == 4);
  CHECK(Encoding{EncodingKind::binary, 16}.q() == 4);
}

}  // TEST_SUITE
