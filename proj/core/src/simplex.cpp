#include "qdcc/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qdcc::bounds {

namespace {

constexpr double kEps = 1e-10;

struct Tableau {
  int rows = 0;
  int cols = 0;  // structural + slack + artificial columns (RHS held separately)
  std::vector<std::vector<double>> a;
  std::vector<double> rhs;
  std::vector<int> basis;

  void pivot(int pr, int pc) {
    const double pv = a[pr][pc];
    for (int j = 0; j < cols; ++j) a[pr][j] /= pv;
    rhs[pr] /= pv;
    for (int i = 0; i < rows; ++i) {
      if (i == pr) continue;
      const double f = a[i][pc];
      if (f == 0.0) continue;
      for (int j = 0; j < cols; ++j) a[i][j] -= f * a[pr][j];
      rhs[i] -= f * rhs[pr];
    }
    basis[pr] = pc;
  }
};

/// Bland's rule: entering = lowest-index column with reduced cost < -eps;
/// leaving = lexicographically smallest ratio row. Returns false when optimal.
bool simplex_iterate(Tableau& t, const std::vector<double>& cost,
                     const std::vector<bool>& allowed, double& objective) {
  for (;;) {
    // reduced costs via the basis cost vector
    std::vector<double> y(t.rows, 0.0);
    for (int i = 0; i < t.rows; ++i) y[i] = cost[t.basis[i]];
    int enter = -1;
    for (int j = 0; j < t.cols; ++j) {
      if (!allowed[j]) continue;
      double red = cost[j];
      for (int i = 0; i < t.rows; ++i) red -= y[i] * t.a[i][j];
      if (red < -kEps) {
        enter = j;
        break;  // Bland: first improving column
      }
    }
    if (enter < 0) {
      objective = 0.0;
      for (int i = 0; i < t.rows; ++i) objective += cost[t.basis[i]] * t.rhs[i];
      return true;
    }
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < t.rows; ++i) {
      if (t.a[i][enter] <= kEps) continue;
      const double ratio = t.rhs[i] / t.a[i][enter];
      if (ratio < best - kEps ||
          (ratio < best + kEps && (leave < 0 || t.basis[i] < t.basis[leave]))) {
        best = ratio;
        leave = i;
      }
    }
    if (leave < 0) return false;  // unbounded direction
    t.pivot(leave, enter);
  }
}

}  // namespace

LPSolution simplex_solve(const LPProblem& lp) {
  const int n = lp.num_vars;
  if (n < 1) throw std::invalid_argument("simplex_solve: no variables");
  const auto is_free = [&](int j) {
    return !lp.free_vars.empty() && lp.free_vars[j];
  };

  // structural columns: x_j, plus a negative copy for free variables
  std::vector<int> neg_col(n, -1);
  int cols = n;
  for (int j = 0; j < n; ++j)
    if (is_free(j)) neg_col[j] = cols++;
  const int n_struct = cols;
  const int m = static_cast<int>(lp.a_eq.size() + lp.a_ub.size());
  const int slack0 = n_struct;
  const int n_slack = static_cast<int>(lp.a_ub.size());
  const int art0 = slack0 + n_slack;

  Tableau t;
  t.rows = m;
  t.cols = art0 + m;  // one artificial per row (unused ones stay out of basis)
  t.a.assign(m, std::vector<double>(t.cols, 0.0));
  t.rhs.assign(m, 0.0);
  t.basis.assign(m, -1);

  auto fill_row = [&](int i, const std::vector<double>& coeffs, double b) {
    for (int j = 0; j < n; ++j) {
      t.a[i][j] = coeffs[j];
      if (neg_col[j] >= 0) t.a[i][neg_col[j]] = -coeffs[j];
    }
    t.rhs[i] = b;
  };

  int row = 0;
  for (std::size_t i = 0; i < lp.a_eq.size(); ++i, ++row)
    fill_row(row, lp.a_eq[i], lp.b_eq[i]);
  for (std::size_t i = 0; i < lp.a_ub.size(); ++i, ++row) {
    fill_row(row, lp.a_ub[i], lp.b_ub[i]);
    t.a[row][slack0 + static_cast<int>(i)] = 1.0;
  }
  // normalize to nonnegative RHS, then seed the basis
  for (int i = 0; i < m; ++i) {
    if (t.rhs[i] < 0) {
      for (int j = 0; j < t.cols; ++j) t.a[i][j] = -t.a[i][j];
      t.rhs[i] = -t.rhs[i];
    }
  }
  std::vector<bool> artificial_used(m, false);
  for (int i = 0; i < m; ++i) {
    const int si = i - static_cast<int>(lp.a_eq.size());
    if (si >= 0 && t.a[i][slack0 + si] == 1.0) {
      t.basis[i] = slack0 + si;  // slack seeds the basis
    } else {
      t.a[i][art0 + i] = 1.0;
      t.basis[i] = art0 + i;
      artificial_used[i] = true;
    }
  }

  // phase 1: minimize the artificial sum
  bool any_artificial = false;
  for (int i = 0; i < m; ++i) any_artificial |= artificial_used[i];
  std::vector<bool> allowed(t.cols, true);
  if (any_artificial) {
    std::vector<double> cost1(t.cols, 0.0);
    for (int i = 0; i < m; ++i)
      if (artificial_used[i]) cost1[art0 + i] = 1.0;
    double obj1 = 0.0;
    if (!simplex_iterate(t, cost1, allowed, obj1))
      throw std::runtime_error("simplex_solve: phase 1 unbounded (internal)");
    if (obj1 > 1e-7) {
      LPSolution sol;
      sol.status = LPStatus::infeasible;
      return sol;
    }
    // pivot any residual artificial out of the basis if possible
    for (int i = 0; i < m; ++i) {
      if (t.basis[i] < art0) continue;
      for (int j = 0; j < art0; ++j) {
        if (std::abs(t.a[i][j]) > kEps) {
          t.pivot(i, j);
          break;
        }
      }
    }
  }
  for (int j = art0; j < t.cols; ++j) allowed[j] = false;

  // phase 2
  std::vector<double> cost2(t.cols, 0.0);
  for (int j = 0; j < n; ++j) {
    cost2[j] = lp.objective[j];
    if (neg_col[j] >= 0) cost2[neg_col[j]] = -lp.objective[j];
  }
  double obj = 0.0;
  LPSolution sol;
  if (!simplex_iterate(t, cost2, allowed, obj)) {
    sol.status = LPStatus::unbounded;
    return sol;
  }

  std::vector<double> full(t.cols, 0.0);
  for (int i = 0; i < m; ++i)
    if (t.basis[i] >= 0 && t.basis[i] < art0) full[t.basis[i]] = t.rhs[i];
  sol.x.assign(n, 0.0);
  for (int j = 0; j < n; ++j)
    sol.x[j] = full[j] - (neg_col[j] >= 0 ? full[neg_col[j]] : 0.0);
  sol.objective = 0.0;
  for (int j = 0; j < n; ++j) sol.objective += lp.objective[j] * sol.x[j];

  // primal feasibility certificate
  double resid = 0.0;
  for (std::size_t i = 0; i < lp.a_eq.size(); ++i) {
    double v = -lp.b_eq[i];
    for (int j = 0; j < n; ++j) v += lp.a_eq[i][j] * sol.x[j];
    resid = std::max(resid, std::abs(v));
  }
  for (std::size_t i = 0; i < lp.a_ub.size(); ++i) {
    double v = -lp.b_ub[i];
    for (int j = 0; j < n; ++j) v += lp.a_ub[i][j] * sol.x[j];
    resid = std::max(resid, v);
  }
  for (int j = 0; j < n; ++j)
    if (!is_free(j)) resid = std::max(resid, -sol.x[j]);
  sol.max_primal_residual = std::max(0.0, resid);

  // dual values read off the unit columns of the final tableau
  {
    std::vector<double> y(m, 0.0);
    std::vector<double> cb(m, 0.0);
    for (int i = 0; i < m; ++i) cb[i] = cost2[t.basis[i]];
    for (int i = 0; i < m; ++i) {
      // column that was the identity seed of row i
      const int si = i - static_cast<int>(lp.a_eq.size());
      const int unit = artificial_used[i] ? art0 + i : slack0 + si;
      double v = 0.0;
      for (int r = 0; r < m; ++r) v += cb[r] * t.a[r][unit];
      y[i] = v;
    }
    double by = 0.0;
    for (std::size_t i = 0; i < lp.a_eq.size(); ++i) by += y[i] * lp.b_eq[i];
    for (std::size_t i = 0; i < lp.a_ub.size(); ++i)
      by += y[lp.a_eq.size() + i] * lp.b_ub[i];
    sol.duality_gap = std::abs(sol.objective - by);
  }
  return sol;
}

std::string status_name(LPStatus s) {
  switch (s) {
    case LPStatus::optimal:
      return "optimal";
    case LPStatus::infeasible:
      return "infeasible";
    case LPStatus::unbounded:
      return "unbounded";
  }
  return "?";
}

}  // namespace qdcc::bounds
