#include "qdcc/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdcc::sim {

namespace {
constexpr std::size_t kMaxAmps = 10'000'000;

using MatRM = Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
}  // namespace

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amps) s += std::norm(a);
  return std::sqrt(s);
}

std::size_t check_capacity(int n, int d) {
  if (n < 1 || d < 1) throw std::invalid_argument("simulator: need n >= 1, d >= 1");
  std::size_t dim = 1;
  for (int i = 0; i < n; ++i) {
    dim *= static_cast<std::size_t>(d);
    if (dim > kMaxAmps)
      throw std::invalid_argument("simulator: d^n exceeds the 1e7 amplitude guard");
  }
  return dim;
}

StateVector uniform_state(int n, int d) {
  const std::size_t dim = check_capacity(n, d);
  StateVector s;
  s.d = d;
  s.n = n;
  s.amps.assign(dim, cxd(std::pow(static_cast<double>(d), -0.5 * n), 0.0));
  return s;
}

CostDiagonal cost_diagonal(const ProblemGraph& g, int d) {
  g.validate();
  const std::size_t dim = check_capacity(g.n_nodes, d);
  CostDiagonal diag;
  diag.d = d;
  diag.n = g.n_nodes;
  diag.values.assign(dim, 0.0);

  std::vector<int> digits(g.n_nodes, 0);
  for (std::size_t z = 0;; ++z) {
    double v = 0.0;
    for (const auto& e : g.edges)
      v += e.w * (digits[e.u] == digits[e.v] ? 1.0 : -1.0);
    diag.values[z] = v;
    // odometer increment, least significant digit = last qudit
    int q = g.n_nodes - 1;
    while (q >= 0 && ++digits[q] == d) digits[q--] = 0;
    if (q < 0) break;
  }
  diag.integral = true;
  diag.vmax = static_cast<double>(g.num_edges());
  return diag;
}

MixerVariant mixer_from_name(const std::string& s) {
  if (s == "standard" || s == "standard_r1") return MixerVariant::standard;
  if (s == "hardware_r1" || s == "hw1") return MixerVariant::hardware_r1;
  if (s == "hardware_r2" || s == "hw2") return MixerVariant::hardware_r2;
  throw std::invalid_argument("unknown mixer variant: " + s);
}

std::string mixer_name(const MixerSpec& spec) {
  switch (spec.variant) {
    case MixerVariant::standard:
      return "standard_r" + std::to_string(spec.r);
    case MixerVariant::hardware_r1:
      return "hardware_r1";
    case MixerVariant::hardware_r2:
      return "hardware_r2";
  }
  return "?";
}

Eigen::MatrixXd mixer_matrix(const MixerSpec& spec) {
  const int d = spec.d;
  if (d < 1) throw std::invalid_argument("mixer_matrix: d >= 1 required");
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
  if (d == 1) return h;
  switch (spec.variant) {
    case MixerVariant::standard: {
      if (spec.r < 1 || spec.r > d - 1)
        throw std::invalid_argument("mixer_matrix: standard mixer needs r in 1..d-1");
      for (int i = 1; i <= spec.r; ++i)
        for (int a = 0; a < d; ++a) {
          h((a + i) % d, a) += 1.0;  // S^i
          h(a, (a + i) % d) += 1.0;  // S^-i
        }
      break;
    }
    case MixerVariant::hardware_r2:
      for (int a = 0; a + 2 < d; ++a) h(a, a + 2) = h(a + 2, a) = 1.0;
      [[fallthrough]];
    case MixerVariant::hardware_r1:
      for (int a = 0; a + 1 < d; ++a) h(a, a + 1) = h(a + 1, a) = 1.0;
      break;
  }
  return h;
}

void apply_cost(StateVector& s, const CostDiagonal& diag, double gamma) {
  if (s.d != diag.d || s.n != diag.n || s.dim() != diag.values.size())
    throw std::invalid_argument("apply_cost: dimension mismatch");
  // The diagonal takes integer values in [-|E|, |E|]; phase factors are
  // looked up rather than recomputed per amplitude.
  if (diag.integral && diag.vmax < 4096) {
    const int off = static_cast<int>(std::round(diag.vmax));
    std::vector<cxd> table(2 * off + 1);
    for (int k = -off; k <= off; ++k)
      table[k + off] = std::polar(1.0, -gamma * k);
    const double* v = diag.values.data();
    cxd* a = s.amps.data();
    const std::size_t dim = s.amps.size();
    for (std::size_t z = 0; z < dim; ++z)
      a[z] *= table[static_cast<int>(v[z]) + off];
  } else {
    for (std::size_t z = 0; z < s.amps.size(); ++z)
      s.amps[z] *= std::polar(1.0, -gamma * diag.values[z]);
  }
}

void apply_single_qudit(StateVector& s, const Eigen::MatrixXcd& u, int qudit) {
  const int d = s.d;
  if (u.rows() != d || u.cols() != d)
    throw std::invalid_argument("apply_single_qudit: matrix size mismatch");
  if (qudit < 0 || qudit >= s.n)
    throw std::invalid_argument("apply_single_qudit: qudit index out of range");

  std::size_t post = 1;
  for (int q = qudit + 1; q < s.n; ++q) post *= static_cast<std::size_t>(d);
  const std::size_t block = post * d;
  const std::size_t nblocks = s.dim() / block;

  const MatRM urm = u;
  if (post == 1) {
    // contiguous qudit: one (dim/d x d) * u^T product
    Eigen::Map<MatRM> m(s.amps.data(), static_cast<Eigen::Index>(nblocks), d);
    m = m * urm.transpose();
    return;
  }
  // per-block GEMM into a reused scratch buffer
  thread_local std::vector<cxd> scratch;
  scratch.resize(s.dim());
  for (std::size_t b = 0; b < nblocks; ++b) {
    Eigen::Map<const MatRM> src(s.amps.data() + b * block, d,
                                static_cast<Eigen::Index>(post));
    Eigen::Map<MatRM> dst(scratch.data() + b * block, d,
                          static_cast<Eigen::Index>(post));
    dst.noalias() = urm * src;
  }
  s.amps.swap(scratch);
}

void apply_mixer(StateVector& s, const MixerSpec& spec, double beta) {
  if (spec.d != s.d) throw std::invalid_argument("apply_mixer: d mismatch");
  if (s.d == 1) return;  // no levels to mix
  const Eigen::MatrixXd h = mixer_matrix(spec);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("apply_mixer: eigendecomposition failed");
  const Eigen::MatrixXd& q = es.eigenvectors();
  Eigen::VectorXcd phases(s.d);
  for (int i = 0; i < s.d; ++i)
    phases(i) = std::polar(1.0, -beta * es.eigenvalues()(i));
  const Eigen::MatrixXcd u =
      q.cast<cxd>() * phases.asDiagonal() * q.transpose().cast<cxd>();
  for (int qd = 0; qd < s.n; ++qd) apply_single_qudit(s, u, qd);
}

StateVector run_qaoa(const ProblemGraph& g, int d, const QaoaParams& params,
                     const MixerSpec& spec) {
  if (params.gammas.size() != params.betas.size())
    throw std::invalid_argument("run_qaoa: gamma/beta length mismatch");
  StateVector s = uniform_state(g.n_nodes, d);
  if (params.depth() == 0) return s;
  const CostDiagonal diag = cost_diagonal(g, d);
  for (int k = 0; k < params.depth(); ++k) {
    apply_cost(s, diag, params.gammas[k]);
    apply_mixer(s, spec, params.betas[k]);
  }
  return s;
}

double expectation(const StateVector& s, const CostDiagonal& diag) {
  if (s.dim() != diag.values.size())
    throw std::invalid_argument("expectation: dimension mismatch");
  double f = 0.0;
  for (std::size_t z = 0; z < s.amps.size(); ++z)
    f += std::norm(s.amps[z]) * diag.values[z];
  return f;
}

double edge_expectation(const StateVector& s, const Edge& e) {
  const int d = s.d;
  std::size_t su = 1, sv = 1;
  for (int q = e.u + 1; q < s.n; ++q) su *= static_cast<std::size_t>(d);
  for (int q = e.v + 1; q < s.n; ++q) sv *= static_cast<std::size_t>(d);
  double f = 0.0;
  for (std::size_t z = 0; z < s.amps.size(); ++z) {
    const int lu = static_cast<int>(z / su) % d;
    const int lv = static_cast<int>(z / sv) % d;
    f += std::norm(s.amps[z]) * e.w * (lu == lv ? 1.0 : -1.0);
  }
  return f;
}

double approx_ratio(double f, int n_edges, long long c_star) {
  if (c_star < 1) throw std::invalid_argument("approx_ratio: c_star must be >= 1");
  return (f + n_edges) / (2.0 * static_cast<double>(c_star));
}

SampleResult sample(const StateVector& s, const CostDiagonal& diag, int shots, Rng& rng) {
  if (shots < 1) throw std::invalid_argument("sample: shots >= 1 required");
  std::vector<double> cdf(s.dim());
  double acc = 0.0;
  for (std::size_t z = 0; z < s.dim(); ++z) {
    acc += std::norm(s.amps[z]);
    cdf[z] = acc;
  }
  SampleResult res;
  res.shots = shots;
  res.best_value = -1e300;
  for (int k = 0; k < shots; ++k) {
    const double u = rng.uniform() * acc;
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    const std::uint64_t z = static_cast<std::uint64_t>(it - cdf.begin());
    ++res.counts[z];
    res.best_value = std::max(res.best_value, diag.values[z]);
  }
  return res;
}

Assignment decode_index(std::uint64_t z, int n, int d) {
  Assignment a;
  a.labels.assign(n, 0);
  for (int q = n - 1; q >= 0; --q) {
    a.labels[q] = static_cast<int>(z % d);
    z /= d;
  }
  return a;
}

}  // namespace qdcc::sim
