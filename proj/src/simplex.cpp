#include "simplex.hpp"

#include <cmath>
#include <limits>

namespace denmet {

LpResult simplex_maximize(const std::vector<std::vector<double>>& a,
                          const std::vector<double>& b, const std::vector<double>& c,
                          double pivot_tol, double feas_tol) {
  const int m = static_cast<int>(a.size());
  const int n = static_cast<int>(c.size());
  if (static_cast<int>(b.size()) != m) fail(errc::bad_argument, "simplex: |b| != row count");
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != n) fail(errc::bad_argument, "simplex: ragged matrix");
  for (double bi : b)
    if (bi < -feas_tol) fail(errc::bad_argument, "simplex: negative rhs, slack basis infeasible");

  // tableau: m rows of [vars | slacks | rhs], plus a reduced-cost row
  const int cols = n + m + 1;
  std::vector<std::vector<double>> t(m, std::vector<double>(cols, 0.0));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t[i][j] = a[i][j];
    t[i][n + i] = 1.0;
    t[i][cols - 1] = std::max(b[i], 0.0);
  }
  std::vector<double> z(cols, 0.0);
  for (int j = 0; j < n; ++j) z[j] = -c[j];
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  LpResult res;
  const long pivot_limit = 64L * (m + n + 2) * (m + n + 2) + 4096;
  for (;;) {
    // Bland: entering variable is the lowest index with negative reduced cost
    int enter = -1;
    for (int j = 0; j < n + m; ++j)
      if (z[j] < -pivot_tol) {
        enter = j;
        break;
      }
    if (enter < 0) break;

    // ratio test, ties broken by smallest basis label
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (t[i][enter] <= pivot_tol) continue;
      const double ratio = t[i][cols - 1] / t[i][enter];
      if (ratio < best - 1e-15 ||
          (std::abs(ratio - best) <= 1e-15 && (leave < 0 || basis[i] < basis[leave]))) {
        best = ratio;
        leave = i;
      }
    }
    if (leave < 0) {
      res.status = LpStatus::unbounded;
      return res;
    }

    const double piv = t[leave][enter];
    for (int j = 0; j < cols; ++j) t[leave][j] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave) continue;
      const double f = t[i][enter];
      if (f == 0.0) continue;
      for (int j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
    }
    const double fz = z[enter];
    if (fz != 0.0)
      for (int j = 0; j < cols; ++j) z[j] -= fz * t[leave][j];
    basis[leave] = enter;

    if (++res.pivots > pivot_limit)
      fail(errc::no_convergence, "simplex: pivot limit exceeded");
  }

  res.x.assign(n, 0.0);
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) res.x[basis[i]] = t[i][cols - 1];
  double obj = 0.0;
  for (int j = 0; j < n; ++j) obj += c[j] * res.x[j];
  res.objective = obj;
  return res;
}

}  // namespace denmet
