// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion pins its tolerance and a wall-clock budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "experiments.hpp"
#include "hermitian.hpp"
#include "metrics.hpp"
#include "piecewise.hpp"

using namespace denmet;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

// 1. mk_LB on C^2 equals |x1 - y1| and the C*-distance, 1e3 pairs, 1e-9.
Outcome criterion_c2_closed_form() {
  const AlgebraShape c2{1, 1};
  const Trace tau = Trace::uniform(c2);
  const Seminorm lb = Seminorm::difference_c2();
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const uint64_t seed = derive_seed(101, i);
    const DensityElement x = sample_density(tau, derive_seed(seed, 1));
    const DensityElement y = sample_density(tau, derive_seed(seed, 2));
    const double mk = mk_distance_lp(tau, lb, x, y);
    const double closed =
        std::abs(x.element().commutative_values()[0] - y.element().commutative_values()[0]);
    const double cstar = cstar_distance(x.element(), y.element());
    worst = std::max({worst, std::abs(mk - closed), std::abs(mk - cstar)});
  }
  return {worst <= 1e-9, "max gap " + format_sig(worst, 3) + " (limit 1e-9, 1000 pairs)"};
}

// 2. d_B(f_n, 1) matches sqrt((3 - 2 sqrt 2) / (3n)) within 1e-8 and the
//    uniform distance is exactly 1, n = 1..100.
Outcome criterion_strict_fineness() {
  const PiecewiseFunction one = PiecewiseFunction::constant(1.0);
  double worst = 0.0;
  for (int n = 1; n <= 100; ++n) {
    const PiecewiseFunction fn = ramp_family(n);
    worst = std::max(worst, std::abs(bures_distance_functions(fn, one) - ramp_bures_gap(n)));
    if (uniform_norm_distance(fn, one) != 1.0)
      return {false, "uniform distance differs from 1 at n = " + std::to_string(n)};
  }
  return {worst <= 1e-8, "max closed-form residual " + format_sig(worst, 3) + " (limit 1e-8)"};
}

// 3. d_B / d_LB at y1 = 1 - 4^-k increases strictly for k = 1..20 and tracks
//    1 / sqrt(2 (1 - y1)) within 1% once 1 - y1 <= 1e-6.
Outcome criterion_ratio_divergence() {
  const AlgebraShape c2{1, 1};
  const Trace tau = Trace::uniform(c2);
  const Seminorm lb = Seminorm::difference_c2();
  const DensityElement x = normalize_to_density(tau, Element::diagonal(c2, {1.0, 0.0}));
  double previous = 0.0, worst_model = 0.0;
  for (int k = 1; k <= 20; ++k) {
    const double t = std::ldexp(1.0, -2 * k);
    const DensityElement y = normalize_to_density(tau, Element::diagonal(c2, {1.0 - t, t}));
    const double ratio = bures_distance(tau, x, y) / mk_distance_lp(tau, lb, x, y);
    if (!(ratio > previous))
      return {false, "ratio not strictly increasing at k = " + std::to_string(k)};
    previous = ratio;
    if (t <= 1e-6)
      worst_model = std::max(worst_model, std::abs(ratio * std::sqrt(2.0 * t) - 1.0));
  }
  return {worst_model <= 0.01, "max deviation from 1/sqrt(2(1-y1)) model " +
                                   format_sig(worst_model, 3) + " (limit 0.01)"};
}

// 4. bures_distance vs both oracles, 1e3 pairs each, 1e-9.
Outcome criterion_bures_oracles() {
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const uint64_t seed = derive_seed(404, i);
    const int n = 2 + (i % 5);
    const AlgebraShape shape(std::vector<int>(n, 1));
    const Trace tau = Trace::uniform(shape);
    const DensityElement x = sample_density(tau, derive_seed(seed, 1));
    const DensityElement y = sample_density(tau, derive_seed(seed, 2));
    worst = std::max(
        worst, std::abs(bures_distance(tau, x, y) - bures_commutative_closed_form(tau, x, y)));

    const AlgebraShape qubit{2};
    const Trace tq = Trace::uniform(qubit);
    const DensityElement qx = sample_density(tq, derive_seed(seed, 3));
    const DensityElement qy = sample_density(tq, derive_seed(seed, 4));
    worst = std::max(worst,
                     std::abs(bures_distance(tq, qx, qy) - fidelity_2x2_bures(qx, qy)));
  }
  return {worst <= 1e-9, "max oracle gap " + format_sig(worst, 3) + " (limit 1e-9)"};
}

// 5. mk LP vs vertex enumeration on C^3 and C^4, 200 random seminorms, 1e-9.
Outcome criterion_lp_oracle() {
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const uint64_t seed = derive_seed(505, i);
    const int n = 3 + (i % 2);
    const AlgebraShape shape(std::vector<int>(n, 1));
    const Trace tau = Trace::uniform(shape);
    Rng rng(derive_seed(seed, 1));
    const Seminorm l = sample_seminorm(shape, n - 1 + (i % 3), rng);
    const DensityElement x = sample_density(tau, derive_seed(seed, 2));
    const DensityElement y = sample_density(tau, derive_seed(seed, 3));
    worst = std::max(
        worst, std::abs(mk_distance_lp(tau, l, x, y) - mk_distance_bruteforce(tau, l, x, y)));
  }
  return {worst <= 1e-9, "max LP/vertex gap " + format_sig(worst, 3) + " (limit 1e-9, 200 instances)"};
}

// 6. metric axioms, 1e4 triples per (metric, shape), zero triangle violations
//    at slack 1e-9.
Outcome criterion_metric_axioms() {
  const AlgebraShape m2{2}, m3{3}, c2{1, 1}, c3{1, 1, 1};
  const Seminorm lb = Seminorm::difference_c2();
  Rng rng(606);
  const Seminorm l3 = sample_seminorm(c3, 3, rng);
  struct Combo {
    MetricKind metric;
    AlgebraShape shape;
    const Seminorm* l;
  };
  const std::vector<Combo> combos = {
      {MetricKind::bures, m2, nullptr},  {MetricKind::bures, m3, nullptr},
      {MetricKind::bures, c2, nullptr},  {MetricKind::bures, c3, nullptr},
      {MetricKind::cstar, m2, nullptr},  {MetricKind::cstar, m3, nullptr},
      {MetricKind::cstar, c2, nullptr},  {MetricKind::cstar, c3, nullptr},
      {MetricKind::quantum, c2, &lb},    {MetricKind::quantum, c3, &l3},
  };
  double worst_deficit = -1.0;
  size_t total_violations = 0;
  for (size_t i = 0; i < combos.size(); ++i) {
    const Trace tau = Trace::uniform(combos[i].shape);
    const AxiomReport report =
        metric_axiom_suite(combos[i].metric, combos[i].shape, tau, 10000,
                           derive_seed(606, 100 + i), combos[i].l, 0, 1e-9);
    total_violations += report.violations.size();
    worst_deficit = std::max(worst_deficit, report.worst_triangle_deficit);
  }
  return {total_violations == 0,
          std::to_string(total_violations) + " violations over 10 combos x 10000 triples, " +
              "worst triangle deficit " + format_sig(worst_deficit, 3)};
}

// 7. convergence transfer + co-vanishing of all three metrics (the
//    equivalence-suite experiment enforces both per family).
Outcome criterion_convergence_transfer() {
  ExperimentConfig cfg;
  cfg.experiment = "equivalence-suite";
  const ExperimentResult res = run_equivalence_suite(cfg);
  std::string detail =
      "equivalence-suite over 4 shapes x 20 families x 500 steps: " +
      std::string(res.status == RunStatus::ok ? "all columns co-vanish" : res.messages.front());
  return {res.status == RunStatus::ok, detail};
}

// 8. eigensolver residual/unitarity at 1e-10 on 1e3 random Hermitian
//    matrices up to 8x8, and (sqrt a)^2 = a within 1e-10.
Outcome criterion_linalg_kernel() {
  double worst_resid = 0.0, worst_unit = 0.0, worst_sqrt = 0.0;
  const std::vector<AlgebraShape> shapes = {AlgebraShape{2}, AlgebraShape{3},
                                            AlgebraShape{2, 1}, AlgebraShape{4}};
  for (int i = 0; i < 1000; ++i) {
    Rng rng(derive_seed(808, i));
    const int dim = 1 + (i % 8);
    Matrix g(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) g(r, c) = rng.gaussian_complex();
    const Matrix a = 0.5 * (g + g.adjoint());
    const EigenDecomposition dec = hermitian_eig(a);
    const double opnorm =
        std::max(std::abs(dec.eigenvalues[0]), std::abs(dec.eigenvalues[dim - 1]));
    for (int c = 0; c < dim; ++c)
      worst_resid = std::max(
          worst_resid,
          (a * dec.eigenvectors.col(c) - dec.eigenvalues[c] * dec.eigenvectors.col(c)).norm() /
              std::max(1.0, opnorm));
    worst_unit = std::max(
        worst_unit,
        (dec.eigenvectors.adjoint() * dec.eigenvectors - Matrix::Identity(dim, dim)).norm());

    const Element b = sample_element(shapes[i % shapes.size()], rng);
    const Element pos = b.adjoint() * b;
    const Element root = matrix_sqrt(pos);
    worst_sqrt = std::max(worst_sqrt, cstar_distance(root * root, pos) /
                                          std::max(1.0, cstar_norm(pos)));
  }
  const bool pass = worst_resid <= 1e-10 && worst_unit <= 1e-10 && worst_sqrt <= 1e-10;
  return {pass, "residual " + format_sig(worst_resid, 3) + ", unitarity " +
                    format_sig(worst_unit, 3) + ", sqrt gap " + format_sig(worst_sqrt, 3) +
                    " (limits 1e-10)"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "C^2 closed form: mk_LB = |x1-y1| = d_C*", 5.0, criterion_c2_closed_form},
      {2, "strict fineness: Bures gap closed form, uniform gap 1", 10.0,
       criterion_strict_fineness},
      {3, "ratio divergence d_B/d_LB on the 4^-k ladder", 1.0, criterion_ratio_divergence},
      {4, "Bures oracle equivalence (diagonal + qubit fidelity)", 10.0,
       criterion_bures_oracles},
      {5, "mk LP vs vertex enumeration on C^3, C^4", 30.0, criterion_lp_oracle},
      {6, "metric axioms on 10^4 triples per combination", 60.0, criterion_metric_axioms},
      {7, "convergence transfer and three-metric co-vanishing", 30.0,
       criterion_convergence_transfer},
      {8, "eigensolver residuals and functional calculus", 20.0, criterion_linalg_kernel},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = seconds < c.budget_seconds;
    const bool pass = outcome.pass && in_budget;
    if (!pass) ++failures;
    std::printf("[%s] criterion %d: %s — %s [%.2fs%s]\n", pass ? "PASS" : "FAIL", c.id, c.name,
                outcome.detail.c_str(), seconds,
                in_budget ? "" : (" > budget " + format_sig(c.budget_seconds, 2) + "s").c_str());
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
