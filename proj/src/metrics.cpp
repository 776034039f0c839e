#include "metrics.hpp"

#include <algorithm>
#include <cmath>

#include "hermitian.hpp"
#include "simplex.hpp"

namespace denmet {

using nlohmann::json;

Seminorm::Seminorm(AlgebraShape s, std::vector<std::vector<double>> cs)
    : shape(std::move(s)), functionals(std::move(cs)) {
  if (!shape.commutative())
    fail(errc::bad_argument, "Seminorm: shape " + shape.describe() + " is not commutative");
  const size_t n = shape.block_dims.size();
  if (functionals.empty()) fail(errc::bad_argument, "Seminorm: no functionals");
  for (const auto& c : functionals) {
    if (c.size() != n) fail(errc::shape_mismatch, "Seminorm: functional length != n");
    double sum = 0.0, mag = 0.0;
    for (double v : c) {
      sum += v;
      mag += std::abs(v);
    }
    if (std::abs(sum) > 1e-12 * std::max(1.0, mag))
      fail(errc::bad_argument,
           "Seminorm: functional row sums to " + format_sig(sum) + ", constants not in kernel");
  }
}

Seminorm Seminorm::difference_c2() { return Seminorm(AlgebraShape{1, 1}, {{1.0, -1.0}}); }

double Seminorm::eval(const std::vector<double>& values) const {
  if (values.size() != shape.block_dims.size())
    fail(errc::shape_mismatch, "Seminorm::eval: wrong vector length");
  double best = 0.0;
  for (const auto& c : functionals) {
    double dot = 0.0;
    for (size_t i = 0; i < c.size(); ++i) dot += c[i] * values[i];
    best = std::max(best, std::abs(dot));
  }
  return best;
}

double Seminorm::eval(const Element& self_adjoint) const {
  return eval(self_adjoint.commutative_values());
}

bool Seminorm::kernel_exactly_constants(double rel_tol) const {
  const int n = static_cast<int>(shape.block_dims.size());
  const int j = static_cast<int>(functionals.size());
  // rank via the Gram matrix C^T C of the stacked functionals
  Matrix gram = Matrix::Zero(n, n);
  for (int r = 0; r < j; ++r)
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) gram(p, q) += functionals[r][p] * functionals[r][q];
  const EigenDecomposition dec = hermitian_eig(gram, 1e-10);
  const double top = std::max(dec.eigenvalues[n - 1], 0.0);
  if (top == 0.0) return n == 1;
  int rank = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (dec.eigenvalues[i] > rel_tol * rel_tol * top) ++rank;
  return rank == n - 1;
}

Seminorm sample_seminorm(const AlgebraShape& shape, int functional_count, Rng& rng) {
  if (!shape.commutative()) fail(errc::bad_argument, "sample_seminorm: commutative shapes only");
  const int n = shape.block_count();
  if (functional_count < n - 1)
    fail(errc::bad_argument, "sample_seminorm: need at least n-1 functionals");
  for (int attempt = 0; attempt < 256; ++attempt) {
    std::vector<std::vector<double>> rows(functional_count, std::vector<double>(n));
    for (auto& row : rows) {
      double mean = 0.0;
      for (double& v : row) {
        v = rng.gaussian();
        mean += v;
      }
      mean /= n;
      double norm = 0.0;
      for (double& v : row) {
        v -= mean;
        norm += v * v;
      }
      norm = std::sqrt(norm);
      if (norm < 1e-8) {
        row.assign(n, 0.0);
        continue;
      }
      for (double& v : row) v /= norm;
    }
    Seminorm cand(shape, rows);
    if (n == 1) return cand;
    // keep the stack well conditioned so the vertex oracle stays accurate
    Matrix gram = Matrix::Zero(n, n);
    for (const auto& row : cand.functionals)
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) gram(p, q) += row[p] * row[q];
    const EigenDecomposition dec = hermitian_eig(gram, 1e-10);
    const double top = dec.eigenvalues[n - 1];
    const double second_smallest = dec.eigenvalues[1];  // smallest is the constants direction
    if (top > 0.0 && second_smallest / top > 1e-2) return cand;
  }
  fail(errc::no_convergence, "sample_seminorm: could not draw a well-conditioned seminorm");
}

cplx StateFunctional::eval(const Element& b) const {
  if (shape != b.shape()) fail(errc::shape_mismatch, "StateFunctional::eval: shape mismatch");
  cplx sum = 0.0;
  for (size_t k = 0; k < coefficients.size(); ++k)
    sum += (coefficients[k].array() * b.block(static_cast<int>(k)).array()).sum();
  return sum;
}

StateFunctional state_map(const Trace& tau, const DensityElement& a) {
  if (tau.shape != a.element().shape()) fail(errc::shape_mismatch, "state_map: shape mismatch");
  StateFunctional phi;
  phi.shape = tau.shape;
  phi.coefficients.reserve(tau.shape.block_count());
  for (int k = 0; k < tau.shape.block_count(); ++k)
    phi.coefficients.push_back(tau.weights[k] * a.element().block(k).transpose());
  return phi;
}

namespace {

double clamp_unit_interval(double v, const char* who) {
  if (v > 1.0 + tol::bures_clamp || v < -tol::bures_clamp)
    fail(errc::numeric, std::string(who) + ": trace value " + format_sig(v) +
                            " drifted past [0, 1] beyond tolerance");
  return std::clamp(v, 0.0, 1.0);
}

void require_density_shape(const Trace& tau, const DensityElement& x, const DensityElement& y,
                           const char* who) {
  if (tau.shape != x.element().shape() || tau.shape != y.element().shape())
    fail(errc::shape_mismatch, std::string(who) + ": shape mismatch");
}

}  // namespace

namespace {

bool same_values(const Element& a, const Element& b) {
  if (a.shape() != b.shape()) return false;
  for (int k = 0; k < a.block_count(); ++k)
    if ((a.block(k) - b.block(k)).squaredNorm() != 0.0) return false;
  return true;
}

}  // namespace

double bures_distance(const Trace& tau, const DensityElement& x, const DensityElement& y) {
  require_density_shape(tau, x, y, "bures_distance");
  if (same_values(x.element(), y.element())) return 0.0;
  const Element sx = matrix_sqrt(x.element());
  const Element sy = matrix_sqrt(y.element());
  const Element overlap = matrix_abs(sx * sy);
  const double fid = clamp_unit_interval(trace_eval(tau, overlap).real(), "bures_distance");
  return std::sqrt(1.0 - fid);
}

double bures_commutative_closed_form(const Trace& tau, const DensityElement& x,
                                     const DensityElement& y) {
  require_density_shape(tau, x, y, "bures_commutative_closed_form");
  if (!tau.shape.commutative())
    fail(errc::bad_argument, "bures_commutative_closed_form: commutative shapes only");
  const std::vector<double> xv = x.element().commutative_values();
  const std::vector<double> yv = y.element().commutative_values();
  double sum = 0.0;
  for (size_t i = 0; i < xv.size(); ++i)
    sum += tau.weights[i] * std::sqrt(std::max(0.0, xv[i]) * std::max(0.0, yv[i]));
  return std::sqrt(1.0 - clamp_unit_interval(sum, "bures_commutative_closed_form"));
}

double fidelity_2x2_bures(const DensityElement& x, const DensityElement& y) {
  const AlgebraShape qubit{2};
  if (x.element().shape() != qubit || y.element().shape() != qubit)
    fail(errc::bad_argument, "fidelity_2x2_bures: shape must be a single 2x2 block");
  if (std::abs(x.trace().weights[0] - 1.0) > 1e-14)
    fail(errc::bad_argument, "fidelity_2x2_bures: trace weight must be 1");
  const Matrix& a = x.element().block(0);
  const Matrix& b = y.element().block(0);
  const double tr_ab = (a * b).trace().real();
  const double det_a = std::max(0.0, a.determinant().real());
  const double det_b = std::max(0.0, b.determinant().real());
  const double fid_sq = tr_ab + 2.0 * std::sqrt(det_a * det_b);
  const double fid =
      clamp_unit_interval(std::sqrt(std::max(0.0, fid_sq)), "fidelity_2x2_bures");
  return std::sqrt(1.0 - fid);
}

namespace {

// Reduced data for the commutative MK problem: objective g_i = w_i (x_i - y_i)
// and the functional rows, both with the last coordinate dropped (the
// constant direction is quotiented out by pinning that coordinate to zero).
struct ReducedMk {
  std::vector<double> objective;              // length n-1
  std::vector<std::vector<double>> rows;      // J rows of length n-1
};

ReducedMk reduce_mk(const Trace& tau, const Seminorm& l, const DensityElement& x,
                    const DensityElement& y) {
  const std::vector<double> xv = x.element().commutative_values();
  const std::vector<double> yv = y.element().commutative_values();
  const size_t n = xv.size();
  ReducedMk r;
  r.objective.resize(n - 1);
  for (size_t i = 0; i + 1 < n; ++i) r.objective[i] = tau.weights[i] * (xv[i] - yv[i]);
  r.rows.reserve(l.functionals.size());
  for (const auto& c : l.functionals) r.rows.emplace_back(c.begin(), c.end() - 1);
  return r;
}

void require_mk_inputs(const Trace& tau, const Seminorm& l, const DensityElement& x,
                       const DensityElement& y, const char* who) {
  require_density_shape(tau, x, y, who);
  if (!tau.shape.commutative())
    fail(errc::bad_argument, std::string(who) + ": commutative shapes only");
  if (l.shape != tau.shape) fail(errc::shape_mismatch, std::string(who) + ": seminorm shape");
}

}  // namespace

double mk_distance_lp(const Trace& tau, const Seminorm& l, const DensityElement& x,
                      const DensityElement& y) {
  require_mk_inputs(tau, l, x, y, "mk_distance_lp");
  const int n = tau.shape.block_count();
  if (n == 1) return 0.0;  // the density space is a single point
  const ReducedMk r = reduce_mk(tau, l, x, y);
  const int m = n - 1;
  const int j = static_cast<int>(r.rows.size());

  // solve at unit objective scale so the pivot threshold cannot swallow a
  // tiny g; mk is positively homogeneous in g
  double gscale = 0.0;
  for (double v : r.objective) gscale = std::max(gscale, std::abs(v));
  if (gscale == 0.0) return 0.0;

  // free u in R^m split as u = p - q with p, q >= 0; slabs become 2J rows
  std::vector<std::vector<double>> a(2 * j, std::vector<double>(2 * m, 0.0));
  std::vector<double> b(2 * j, 1.0);
  std::vector<double> c(2 * m, 0.0);
  for (int row = 0; row < j; ++row)
    for (int i = 0; i < m; ++i) {
      a[row][i] = r.rows[row][i];
      a[row][m + i] = -r.rows[row][i];
      a[j + row][i] = -r.rows[row][i];
      a[j + row][m + i] = r.rows[row][i];
    }
  for (int i = 0; i < m; ++i) {
    c[i] = r.objective[i] / gscale;
    c[m + i] = -c[i];
  }

  const LpResult res = simplex_maximize(a, b, c);
  if (res.status == LpStatus::unbounded)
    fail(errc::seminorm_rank,
         "mk_distance_lp: unbounded program, seminorm kernel larger than the constants "
         "(rank of the stacked functionals < n-1)");
  // the feasible set is symmetric, so the signed maximum already is |.|
  return gscale * std::max(0.0, res.objective);
}

double mk_distance_bruteforce(const Trace& tau, const Seminorm& l, const DensityElement& x,
                              const DensityElement& y) {
  require_mk_inputs(tau, l, x, y, "mk_distance_bruteforce");
  const int n = tau.shape.block_count();
  if (n == 1) return 0.0;
  if (n > 4) fail(errc::bad_argument, "mk_distance_bruteforce: n <= 4 only");
  const ReducedMk r = reduce_mk(tau, l, x, y);
  const int m = n - 1;
  const int j = static_cast<int>(r.rows.size());

  // enumerate m-subsets of functionals and sign patterns; each nonsingular
  // system <c_s, u> = sigma_s is a candidate vertex
  std::vector<int> subset(m);
  std::vector<int> stack;
  double best = 0.0;
  bool found_vertex = false;

  auto try_vertex = [&](const std::vector<int>& rows_idx, int signs) {
    Eigen::MatrixXd mat(m, m);
    Eigen::VectorXd rhs(m);
    for (int s = 0; s < m; ++s) {
      for (int i = 0; i < m; ++i) mat(s, i) = r.rows[rows_idx[s]][i];
      rhs[s] = (signs >> s) & 1 ? 1.0 : -1.0;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(mat);
    lu.setThreshold(1e-9);
    if (lu.rank() < m) return;  // degenerate subset, skipped
    const Eigen::VectorXd u = lu.solve(rhs);
    for (int row = 0; row < j; ++row) {
      double dot = 0.0;
      for (int i = 0; i < m; ++i) dot += r.rows[row][i] * u[i];
      if (std::abs(dot) > 1.0 + 1e-8) return;  // infeasible vertex
    }
    double val = 0.0;
    for (int i = 0; i < m; ++i) val += r.objective[i] * u[i];
    best = std::max(best, std::abs(val));
    found_vertex = true;
  };

  // iterate combinations of size m out of j
  std::vector<int> comb(m);
  auto recurse = [&](auto&& self, int start, int depth) -> void {
    if (depth == m) {
      for (int signs = 0; signs < (1 << m); ++signs) try_vertex(comb, signs);
      return;
    }
    for (int idx = start; idx < j; ++idx) {
      comb[depth] = idx;
      self(self, idx + 1, depth + 1);
    }
  };
  recurse(recurse, 0, 0);

  if (!found_vertex)
    fail(errc::seminorm_rank, "mk_distance_bruteforce: no feasible vertex, polytope unbounded");
  return best;
}

std::string metric_name(MetricKind m) {
  switch (m) {
    case MetricKind::bures: return "bures";
    case MetricKind::cstar: return "cstar";
    case MetricKind::quantum: return "quantum";
  }
  return "?";
}

json AxiomReport::to_json() const {
  json jv = json::array();
  for (const auto& v : violations)
    jv.push_back({{"trial", v.trial},
                  {"seed", v.seed},
                  {"kind", v.kind},
                  {"magnitude", v.magnitude},
                  {"inputs_digest", v.inputs_digest}});
  json jr = json::array();
  for (const auto& r : records)
    jr.push_back({{"trial", r.trial},
                  {"seed", r.seed},
                  {"inputs_digest", r.inputs_digest},
                  {"d_xy", r.d_xy},
                  {"d_yz", r.d_yz},
                  {"d_xz", r.d_xz}});
  return json{{"metric", metric_name(metric)},
              {"shape", shape.block_dims},
              {"seed", seed},
              {"trials", trials},
              {"triangle_slack", triangle_slack},
              {"violation_count", violations.size()},
              {"violations", std::move(jv)},
              {"worst_triangle_deficit", worst_triangle_deficit},
              {"worst_asymmetry", worst_asymmetry},
              {"records", std::move(jr)}};
}

AxiomReport metric_axiom_suite(MetricKind metric, const AlgebraShape& shape, const Trace& tau,
                               int trials, uint64_t seed, const Seminorm* l, int max_recorded,
                               double triangle_slack) {
  if (metric == MetricKind::quantum) {
    if (!shape.commutative())
      fail(errc::bad_argument, "metric_axiom_suite: quantum metric needs a commutative shape");
    if (l == nullptr)
      fail(errc::bad_argument, "metric_axiom_suite: quantum metric needs a seminorm");
  }
  if (tau.shape != shape) fail(errc::shape_mismatch, "metric_axiom_suite: trace shape");

  AxiomReport report;
  report.metric = metric;
  report.shape = shape;
  report.seed = seed;
  report.trials = trials;
  report.triangle_slack = triangle_slack;

  auto dist = [&](const DensityElement& a, const DensityElement& b) -> double {
    switch (metric) {
      case MetricKind::bures: return bures_distance(tau, a, b);
      case MetricKind::cstar: return cstar_distance(a.element(), b.element());
      case MetricKind::quantum: return mk_distance_lp(tau, *l, a, b);
    }
    return 0.0;
  };

  // thresholds for reading "d == 0" off floating-point output; the Bures
  // value passes through an outer sqrt, which turns an O(1e-15) trace
  // residue into O(3e-8)
  const double zero_read = metric == MetricKind::bures ? 1e-6 : 1e-8;
  const double cstar_zero = 1e-8;

  for (int trial = 0; trial < trials; ++trial) {
    const uint64_t trial_seed = derive_seed(seed, static_cast<uint64_t>(trial));
    const DensityElement x = sample_density(tau, derive_seed(trial_seed, 1));
    // every 64th trial pins y = x to exercise the zero side of the identity axiom
    const bool degenerate = (trial % 64) == 63;
    const DensityElement y =
        degenerate ? x : sample_density(tau, derive_seed(trial_seed, 2));
    const DensityElement z = sample_density(tau, derive_seed(trial_seed, 3));

    const double d_xy = dist(x, y), d_yx = dist(y, x);
    const double d_yz = dist(y, z), d_xz = dist(x, z);

    uint64_t digest = x.element().digest();
    digest = fnv1a64(&digest, sizeof digest, y.element().digest());
    digest = fnv1a64(&digest, sizeof digest, z.element().digest());
    const std::string digest_hex = hex64(digest);

    auto violation = [&](const char* kind, double magnitude) {
      report.violations.push_back({trial, trial_seed, kind, magnitude, digest_hex});
    };

    if (d_xy < 0.0 || d_yz < 0.0 || d_xz < 0.0)
      violation("nonnegative", std::min({d_xy, d_yz, d_xz}));

    const double asym = std::abs(d_xy - d_yx);
    report.worst_asymmetry = std::max(report.worst_asymmetry, asym);
    if (asym > 1e-10) violation("symmetry", asym);

    const double c_xy = cstar_distance(x.element(), y.element());
    if ((d_xy <= zero_read) != (c_xy <= cstar_zero))
      violation("identity", d_xy <= zero_read ? c_xy : d_xy);

    const double deficits[3] = {d_xz - (d_xy + d_yz), d_xy - (d_xz + d_yz),
                                d_yz - (d_xy + d_xz)};
    for (double deficit : deficits) {
      report.worst_triangle_deficit = std::max(report.worst_triangle_deficit, deficit);
      if (deficit > triangle_slack) violation("triangle", deficit);
    }

    if (trial < max_recorded)
      report.records.push_back({trial, trial_seed, digest_hex, d_xy, d_yz, d_xz});
  }
  return report;
}

std::vector<DensityElement> probe_family(const Trace& tau, const DensityElement& x,
                                         const Element& h, int count) {
  if (count < 1) fail(errc::bad_argument, "probe_family: count must be >= 1");
  if (!h.is_hermitian())
    fail(errc::bad_argument, "probe_family: perturbation must be self-adjoint");
  // x + h/k lies on the segment [x, x + h]; positivity at k = 1 settles all k
  const PositivityCertificate endpoint = check_positive(x.element() + h);
  if (!endpoint.positive)
    fail(errc::resample, "probe_family: x + h leaves the positive cone (min eigenvalue " +
                             format_sig(endpoint.min_eigenvalue) + "), resample h");
  std::vector<DensityElement> family;
  family.reserve(count);
  for (int k = 1; k <= count; ++k)
    family.push_back(normalize_to_density(tau, x.element() + (1.0 / k) * h));
  return family;
}

std::vector<ProbeRow> convergence_transfer_probe(const Trace& tau, const DensityElement& x,
                                                 const Element& h, int count) {
  const std::vector<DensityElement> family = probe_family(tau, x, h, count);
  std::vector<ProbeRow> table;
  table.reserve(family.size());
  for (int k = 1; k <= count; ++k) {
    const DensityElement& xk = family[k - 1];
    ProbeRow row;
    row.k = k;
    row.d_cstar = cstar_distance(xk.element(), x.element());
    row.d_bures = bures_distance(tau, xk, x);
    table.push_back(row);
  }
  for (const ProbeRow& row : table)
    if (row.d_cstar <= 1e-8 && row.d_bures > 1e-4)
      fail(errc::numeric, "convergence_transfer_probe: d_bures = " + format_sig(row.d_bures) +
                              " at k = " + std::to_string(row.k) +
                              " despite d_cstar = " + format_sig(row.d_cstar));
  return table;
}

}  // namespace denmet
