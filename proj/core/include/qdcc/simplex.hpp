#pragma once

#include <string>
#include <vector>

namespace qdcc::bounds {

/// min c.x  s.t.  A_eq x = b_eq,  A_ub x <= b_ub,  x_i >= 0 unless marked free.
struct LPProblem {
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<std::vector<double>> a_eq;
  std::vector<double> b_eq;
  std::vector<std::vector<double>> a_ub;
  std::vector<double> b_ub;
  std::vector<bool> free_vars;  // empty means all nonnegative
};

enum class LPStatus { optimal, infeasible, unbounded };

struct LPSolution {
  LPStatus status = LPStatus::optimal;
  std::vector<double> x;
  double objective = 0.0;
  double max_primal_residual = 0.0;  // feasibility certificate
  double duality_gap = 0.0;          // |c.x - b.y| from the final tableau
};

/// Dense two-phase tableau simplex with Bland's rule (deterministic,
/// anti-cycling). For the small LPs this project builds.
LPSolution simplex_solve(const LPProblem& lp);

std::string status_name(LPStatus s);

}  // namespace qdcc::bounds
