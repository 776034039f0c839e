#pragma once

#include <vector>

#include "common.hpp"

namespace denmet {

enum class LpStatus { optimal, unbounded };

struct LpResult {
  LpStatus status = LpStatus::optimal;
  double objective = 0.0;
  std::vector<double> x;
  int pivots = 0;
};

/// Dense primal simplex with Bland's rule:
///   maximize c.x  subject to  A x <= b, x >= 0
/// b must be nonnegative (the slack basis is the starting feasible point).
LpResult simplex_maximize(const std::vector<std::vector<double>>& a,
                          const std::vector<double>& b, const std::vector<double>& c,
                          double pivot_tol = tol::lp_pivot,
                          double feas_tol = tol::lp_feasibility);

}  // namespace denmet
