#include "qdcc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "qdcc/parallel.hpp"

namespace qdcc::bounds {

namespace {

constexpr double kPi = std::numbers::pi;

SubgraphStructure make_structure(int id, int n_nodes, std::array<Edge, 5> edges) {
  SubgraphStructure s;
  s.id = id;
  s.n_nodes = n_nodes;
  s.edges = edges;
  // centre-edge-preserving automorphisms by exhaustive node-permutation search
  std::vector<int> perm(n_nodes);
  for (int i = 0; i < n_nodes; ++i) perm[i] = i;
  std::set<std::pair<int, int>> edge_set;
  std::map<std::pair<int, int>, int> edge_index;
  for (int i = 0; i < 5; ++i) {
    edge_set.insert({edges[i].u, edges[i].v});
    edge_index[{edges[i].u, edges[i].v}] = i;
  }
  do {
    if (!((perm[0] == 0 && perm[1] == 1) || (perm[0] == 1 && perm[1] == 0))) continue;
    std::array<int, 5> eperm{};
    bool ok = true;
    for (int i = 0; i < 5; ++i) {
      const int a = std::min(perm[edges[i].u], perm[edges[i].v]);
      const int b = std::max(perm[edges[i].u], perm[edges[i].v]);
      const auto it = edge_index.find({a, b});
      if (it == edge_index.end()) {
        ok = false;
        break;
      }
      eperm[i] = it->second;
    }
    if (ok) s.edge_automorphisms.push_back(eperm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return s;
}

}  // namespace

const std::vector<SubgraphStructure>& structures() {
  static const std::vector<SubgraphStructure> kStructures = [] {
    std::vector<SubgraphStructure> v;
    // centre (0,1); leaves attached per shared-neighbour count
    v.push_back(make_structure(
        0, 6, {Edge{0, 1, 1}, Edge{0, 2, 1}, Edge{0, 3, 1}, Edge{1, 4, 1}, Edge{1, 5, 1}}));
    v.push_back(make_structure(
        1, 5, {Edge{0, 1, 1}, Edge{0, 2, 1}, Edge{1, 2, 1}, Edge{0, 3, 1}, Edge{1, 4, 1}}));
    v.push_back(make_structure(
        2, 4, {Edge{0, 1, 1}, Edge{0, 2, 1}, Edge{0, 3, 1}, Edge{1, 2, 1}, Edge{1, 3, 1}}));
    return v;
  }();
  return kStructures;
}

ProblemGraph WeightedSubgraph::graph() const {
  const auto& s = structures()[structure];
  ProblemGraph g;
  g.n_nodes = s.n_nodes;
  for (int i = 0; i < 5; ++i) g.edges.push_back({s.edges[i].u, s.edges[i].v, weights[i]});
  std::sort(g.edges.begin(), g.edges.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  return g;
}

WeightedSubgraph canonicalize(int structure, const std::array<int, 5>& weights) {
  const auto& s = structures()[structure];
  std::array<int, 5> best = weights;
  for (const auto& perm : s.edge_automorphisms) {
    std::array<int, 5> cand{};
    for (int i = 0; i < 5; ++i) cand[perm[i]] = weights[i];
    if (cand < best) best = cand;
  }
  return {structure, best};
}

std::vector<WeightedSubgraph> enumerate_subgraphs() {
  std::vector<WeightedSubgraph> out;
  std::set<WeightedSubgraph> seen;
  for (int sid = 0; sid < 3; ++sid) {
    for (int mask = 0; mask < 32; ++mask) {
      std::array<int, 5> w{};
      for (int i = 0; i < 5; ++i) w[i] = (mask >> i) & 1 ? 1 : -1;
      const WeightedSubgraph cano = canonicalize(sid, w);
      if (seen.insert(cano).second) out.push_back(cano);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rational c_lambda(const WeightedSubgraph& lam) {
  const auto oracle = brute_force_maxagree(lam.graph());
  return {oracle.c_star, 5};
}

double f_lambda(const WeightedSubgraph& lam, int d, double gamma, double beta) {
  if (d < 1 || d > 4) throw std::invalid_argument("f_lambda: d in 1..4");
  if (d == 1) return static_cast<double>(lam.weights[0]);
  const ProblemGraph g = lam.graph();
  sim::MixerSpec spec{sim::MixerVariant::standard, d, 1};
  sim::QaoaParams params;
  params.gammas = {gamma};
  params.betas = {beta};
  const sim::StateVector s = sim::run_qaoa(g, d, params, spec);
  const auto& st = structures()[lam.structure];
  return sim::edge_expectation(s, {st.edges[0].u, st.edges[0].v, lam.weights[0]});
}

WeightedSubgraph classify_edge_environment(const ProblemGraph& g, int edge_index) {
  const Edge centre = g.edges.at(edge_index);
  auto weight_of = [&](int a, int b) {
    const int u = std::min(a, b), v = std::max(a, b);
    for (const auto& e : g.edges)
      if (e.u == u && e.v == v) return e.w;
    throw std::logic_error("classify_edge_environment: missing edge");
  };
  std::vector<int> nu, nv;
  for (const auto& e : g.edges) {
    if (e.u == centre.u && e.v == centre.v) continue;
    if (e.u == centre.u) nu.push_back(e.v);
    if (e.v == centre.u) nu.push_back(e.u);
    if (e.u == centre.v) nv.push_back(e.v);
    if (e.v == centre.v) nv.push_back(e.u);
  }
  if (nu.size() != 2 || nv.size() != 2)
    throw std::invalid_argument("classify_edge_environment: graph is not 3-regular");
  std::vector<int> shared;
  for (const int a : nu)
    for (const int b : nv)
      if (a == b) shared.push_back(a);

  std::array<int, 5> w{};
  w[0] = centre.w;
  int sid;
  if (shared.empty()) {
    sid = 0;  // (0,2),(0,3),(1,4),(1,5)
    w[1] = weight_of(centre.u, nu[0]);
    w[2] = weight_of(centre.u, nu[1]);
    w[3] = weight_of(centre.v, nv[0]);
    w[4] = weight_of(centre.v, nv[1]);
  } else if (shared.size() == 1) {
    sid = 1;  // (0,2),(1,2) to the shared node, then the two leaves
    const int c = shared[0];
    const int leaf_u = nu[0] == c ? nu[1] : nu[0];
    const int leaf_v = nv[0] == c ? nv[1] : nv[0];
    w[1] = weight_of(centre.u, c);
    w[2] = weight_of(centre.v, c);
    w[3] = weight_of(centre.u, leaf_u);
    w[4] = weight_of(centre.v, leaf_v);
  } else {
    sid = 2;  // (0,2),(0,3),(1,2),(1,3) with both neighbours shared
    w[1] = weight_of(centre.u, shared[0]);
    w[2] = weight_of(centre.u, shared[1]);
    w[3] = weight_of(centre.v, shared[0]);
    w[4] = weight_of(centre.v, shared[1]);
  }
  return canonicalize(sid, w);
}

BoundParams certification_params() {
  BoundParams p;
  p.angles[2] = {kPi - 2.857, 2 * 0.4833};
  p.angles[3] = {kPi - 2.773, 2 * 0.1310};
  p.angles[4] = {kPi - 2.682, 2 * 0.1435};
  return p;
}

FTable build_f_table(const BoundParams& params) {
  FTable table;
  table.catalogue = enumerate_subgraphs();
  table.c.resize(table.catalogue.size());
  for (std::size_t i = 0; i < table.catalogue.size(); ++i)
    table.c[i] = c_lambda(table.catalogue[i]);
  for (int d = 1; d <= 4; ++d) table.f[d].resize(table.catalogue.size());
  parallel_for(table.catalogue.size(), [&](std::size_t i) {
    for (int d = 1; d <= 4; ++d) {
      const double g = d == 1 ? 0.0 : params.angles.at(d)[0];
      const double b = d == 1 ? 0.0 : params.angles.at(d)[1];
      table.f[d][i] = f_lambda(table.catalogue[i], d, g, b);
    }
  });
  return table;
}

LPProblem build_lp(Relaxation rel, const FTable& table) {
  std::vector<int> ids;
  for (std::size_t i = 0; i < table.catalogue.size(); ++i)
    if (rel == Relaxation::lp1 || table.c[i] == Rational(1)) ids.push_back(static_cast<int>(i));
  if (ids.empty()) throw std::logic_error("build_lp: empty environment set");

  const int m = static_cast<int>(ids.size());
  LPProblem lp;
  lp.num_vars = m + 1;  // n_lambda..., alpha
  lp.objective.assign(m + 1, 0.0);
  lp.objective[m] = 1.0;  // minimize alpha
  lp.free_vars.assign(m + 1, false);
  lp.free_vars[m] = true;

  for (int d = 1; d <= 4; ++d) {
    std::vector<double> row(m + 1, 0.0);
    for (int j = 0; j < m; ++j)
      row[j] = 0.5 * (1.0 + table.f.at(d)[ids[j]]);  // centre-edge agreement fraction
    row[m] = -1.5;
    lp.a_ub.push_back(std::move(row));
    lp.b_ub.push_back(0.0);
  }
  {
    // every crossed-square edge needs four triangle-environment edges
    std::vector<double> row(m + 1, 0.0);
    for (int j = 0; j < m; ++j) {
      const int sid = table.catalogue[ids[j]].structure;
      if (sid == 1) row[j] = -1.0;
      if (sid == 2) row[j] = 4.0;
    }
    lp.a_ub.push_back(std::move(row));
    lp.b_ub.push_back(0.0);
  }
  {
    // triangles are vertex-disjoint: at most one triangle edge per node
    std::vector<double> row(m + 1, 0.0);
    for (int j = 0; j < m; ++j)
      if (table.catalogue[ids[j]].structure == 1) row[j] = 1.0;
    lp.a_ub.push_back(std::move(row));
    lp.b_ub.push_back(1.0);
  }
  {
    std::vector<double> row(m + 1, 0.0);
    for (int j = 0; j < m; ++j) row[j] = 1.0;
    lp.a_eq.push_back(std::move(row));
    lp.b_eq.push_back(1.5);
  }
  return lp;
}

BoundResult solve_bound(Relaxation rel, const FTable& table) {
  std::vector<int> ids;
  for (std::size_t i = 0; i < table.catalogue.size(); ++i)
    if (rel == Relaxation::lp1 || table.c[i] == Rational(1)) ids.push_back(static_cast<int>(i));
  const LPProblem lp = build_lp(rel, table);
  BoundResult res;
  res.lp = simplex_solve(lp);
  if (res.lp.status != LPStatus::optimal)
    throw std::runtime_error("solve_bound: LP not optimal: " + status_name(res.lp.status));
  res.alpha = res.lp.objective;
  for (std::size_t j = 0; j + 1 < res.lp.x.size(); ++j)
    if (res.lp.x[j] > 1e-9) res.hardest[table.catalogue[ids[j]]] = res.lp.x[j];
  return res;
}

double reoptimize_hardest(const std::map<WeightedSubgraph, double>& hardest,
                          const std::vector<Rational>& c_of,
                          const std::vector<WeightedSubgraph>& catalogue,
                          const strategies::OptimizerConfig& cfg, int starts,
                          BoundParams* best_params) {
  std::vector<std::pair<WeightedSubgraph, double>> mix(hardest.begin(), hardest.end());
  double denom = 0.0;
  for (const auto& [lam, n] : mix) {
    const auto it = std::find(catalogue.begin(), catalogue.end(), lam);
    if (it == catalogue.end()) throw std::logic_error("reoptimize_hardest: unknown environment");
    denom += n * c_of[it - catalogue.begin()].to_double();
  }

  double best_over_d = 0.0;
  Rng rng(Rng::derive(cfg.seed, 0xB0B));
  for (int d = 1; d <= 4; ++d) {
    if (d == 1) {
      double num = 0.0;
      for (const auto& [lam, n] : mix) num += n * 0.5 * (1.0 + lam.weights[0]);
      best_over_d = std::max(best_over_d, num / denom);
      continue;
    }
    auto h_of = [&](std::span<const double> x) {
      double num = 0.0;
      for (const auto& [lam, n] : mix)
        num += n * 0.5 * (1.0 + f_lambda(lam, d, strategies::wrap_angle(x[0]),
                                         strategies::wrap_angle(x[1])));
      return num / denom;
    };
    double best_d = -1e300;
    std::array<double, 2> best_x{};
    for (int s = 0; s < starts; ++s) {
      const std::vector<double> x0 = {rng.uniform(0.0, 2 * kPi), rng.uniform(0.0, 2 * kPi)};
      const auto res = strategies::nelder_mead(h_of, x0, cfg);
      if (res.f > best_d) {
        best_d = res.f;
        best_x = {strategies::wrap_angle(res.x[0]), strategies::wrap_angle(res.x[1])};
      }
    }
    if (best_params) best_params->angles[d] = best_x;
    best_over_d = std::max(best_over_d, best_d);
  }
  return best_over_d;
}

std::vector<IterationRound> iterative_bound(const BoundParams& init, int rounds,
                                            Relaxation rel,
                                            const strategies::OptimizerConfig& cfg) {
  if (rounds < 1) throw std::invalid_argument("iterative_bound: rounds >= 1 required");
  std::vector<IterationRound> trace;
  BoundParams params = init;
  for (int r = 0; r < rounds; ++r) {
    IterationRound round;
    round.params = params;
    const FTable table = build_f_table(params);
    const BoundResult bound = solve_bound(rel, table);
    round.lp_alpha = bound.alpha;
    round.hardest = bound.hardest;
    BoundParams next = params;
    round.reoptimized_alpha = reoptimize_hardest(bound.hardest, table.c, table.catalogue,
                                                 cfg, /*starts=*/20, &next);
    trace.push_back(round);
    params = next;
  }
  return trace;
}

}  // namespace qdcc::bounds
