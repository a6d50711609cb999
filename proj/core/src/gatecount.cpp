#include "qdcc/gatecount.hpp"

#include <stdexcept>

namespace qdcc::gatecount {

Topology topology_from_name(const std::string& s) {
  if (s == "1d" || s == "1D" || s == "chain") return Topology::chain_1d;
  if (s == "2d" || s == "2D" || s == "triangular") return Topology::triangular_2d;
  throw std::invalid_argument("unknown topology: " + s);
}

EncodingKind encoding_from_name(const std::string& s) {
  if (s == "qudit") return EncodingKind::qudit;
  if (s == "binary") return EncodingKind::binary;
  throw std::invalid_argument("unknown encoding: " + s);
}

std::string topology_name(Topology t) {
  return t == Topology::chain_1d ? "1d" : "2d";
}

std::string encoding_name(EncodingKind e) {
  return e == EncodingKind::qudit ? "qudit" : "binary";
}

int Encoding::q() const {
  if (d < 2) throw std::invalid_argument("Encoding: d >= 2 required");
  int q = 0;
  int cap = 1;
  while (cap < d) {
    cap *= 2;
    ++q;
  }
  return q;
}

int cp_cost(int d, CpForm form) {
  if (d < 2) throw std::invalid_argument("cp_cost: d >= 2 required");
  return form == CpForm::symmetric ? 2 * d : 2 * d - 2;
}

int swap_d_cost(int d) {
  if (d < 2) throw std::invalid_argument("swap_d_cost: d >= 2 required");
  return 3 * (d - 1);
}

BinaryUnits binary_unit_costs(int q, Topology topo) {
  BinaryUnits u;
  if (topo == Topology::chain_1d) {
    switch (q) {
      case 2:
        u = {Rational(12), Rational(18), 1};
        break;
      case 3:
        u = {Rational(27), Rational(54), 11};
        break;
      case 4:
        u = {Rational(48), Rational(108), 49};
        break;
      default:
        throw std::invalid_argument("binary_unit_costs: q must be 2, 3 or 4");
    }
  } else {
    // weighted averages over the triangular e-dit tilings' leg counts
    switch (q) {
      case 2:
        u = {Rational(3) * Rational(10, 3), Rational(3) * Rational(4), 1};
        break;
      case 3:
        u = {Rational(3) * Rational(8), Rational(3) * Rational(6), 5};
        break;
      case 4:
        u = {Rational(3) * Rational(28, 3), Rational(3) * Rational(38, 3), 19};
        break;
      default:
        throw std::invalid_argument("binary_unit_costs: q must be 2, 3 or 4");
    }
  }
  return u;
}

const std::vector<std::pair<int, int>> kBinaryCpNonPow2 = {
    {3, 70}, {5, 206}, {6, 142}, {7, 78}};

CostBreakdown total_cost(int n, int d, EncodingKind enc, Topology topo) {
  if (n < 2) throw std::invalid_argument("total_cost: n >= 2 required");
  CostBreakdown cb;
  cb.encoding = enc;
  cb.topology = topo;
  cb.n = n;
  cb.d = d;
  cb.n_edges = static_cast<long long>(n) * (n - 1) / 2;
  const SwapSchedule sched = swap_schedule_1d(n);  // snake linearization in 2D
  cb.n_inter_swaps = sched.total_swaps;
  cb.inter_swaps_subleading = topo == Topology::triangular_2d;

  if (enc == EncodingKind::qudit) {
    cb.cp_unit = Rational(cp_cost(d, CpForm::chain));
    cb.swap_unit = Rational(swap_d_cost(d));
  } else {
    const Encoding e{enc, d};
    const int q = e.q();
    if ((1 << q) != d || q < 2 || q > 4)
      throw std::invalid_argument(
          "total_cost: binary encoding supports d = 2^q with q in {2,3,4}");
    cb.q = q;
    const BinaryUnits u = binary_unit_costs(q, topo);
    cb.swap_unit = u.edit_swap;
    cb.intra_swap_unit = u.intra_swap;
    cb.multicontrol_unit = u.multicontrol;
    cb.cp_unit = u.intra_swap + Rational(2 * q) + Rational(u.multicontrol);
  }

  if (topo == Topology::chain_1d) {
    // n_inter = (N-1)(N-2)/2 = |E| - (N-1): the swap cost folds into the
    // per-edge coefficient minus a linear remainder.
    cb.per_edge_coeff = cb.cp_unit + cb.swap_unit;
    cb.per_n_coeff = cb.swap_unit;
    cb.per_n_sign = -1;
    cb.c_tot = cb.per_edge_coeff * Rational(cb.n_edges) -
               cb.per_n_coeff * Rational(n - 1);
  } else {
    cb.per_edge_coeff = cb.cp_unit;
    cb.per_n_coeff = cb.swap_unit;
    cb.per_n_sign = 1;
    cb.c_tot = cb.per_edge_coeff * Rational(cb.n_edges) +
               cb.swap_unit * Rational(cb.n_inter_swaps);
  }
  return cb;
}

SwapSchedule swap_schedule_1d(int n) {
  if (n < 2) throw std::invalid_argument("swap_schedule_1d: n >= 2 required");
  SwapSchedule s;
  s.n = n;
  std::vector<int> pos(n);  // pos[i] = logical qudit at line position i
  for (int i = 0; i < n; ++i) pos[i] = i;
  auto note_adjacent = [&] {
    for (int i = 0; i + 1 < n; ++i)
      s.met_pairs.insert({std::min(pos[i], pos[i + 1]), std::max(pos[i], pos[i + 1])});
  };
  note_adjacent();
  for (int layer = 0; layer < n - 2; ++layer) {
    std::vector<std::pair<int, int>> swaps;
    for (int i = layer % 2; i + 1 < n; i += 2) {
      swaps.emplace_back(i, i + 1);
      std::swap(pos[i], pos[i + 1]);
    }
    s.total_swaps += static_cast<long long>(swaps.size());
    s.layers.push_back(std::move(swaps));
    note_adjacent();
  }
  return s;
}

std::pair<long long, int> swap_lower_bounds(int n) {
  if (n < 2) throw std::invalid_argument("swap_lower_bounds: n >= 2 required");
  const long long pairs = static_cast<long long>(n) * (n - 1) / 2;
  const long long min_swaps = (pairs - (n - 1) + 1) / 2;
  const int min_layers = (n + 1) / 2 - 1;
  return {min_swaps, min_layers};
}

}  // namespace qdcc::gatecount
