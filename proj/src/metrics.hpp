#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "algebra.hpp"

namespace denmet {

/// L-seminorm on the self-adjoint part of a commutative algebra:
/// L(a) = max_j |<c_j, a>| over finitely many real functionals whose
/// entries sum to zero, so constants are in the kernel. The kernel is
/// exactly the constants when the stacked functionals have rank n-1.
struct Seminorm {
  AlgebraShape shape;
  std::vector<std::vector<double>> functionals;

  Seminorm() = default;
  Seminorm(AlgebraShape s, std::vector<std::vector<double>> cs);

  /// L^B on C^2: the single functional (1, -1).
  static Seminorm difference_c2();

  double eval(const std::vector<double>& values) const;
  double eval(const Element& self_adjoint) const;

  /// True iff the stacked functionals have rank n-1 (kernel == constants).
  /// rel_tol is the relative singular-value cutoff.
  bool kernel_exactly_constants(double rel_tol = 1e-7) const;
};

/// Random row-sum-zero seminorm with full rank n-1 and modest conditioning.
Seminorm sample_seminorm(const AlgebraShape& shape, int functional_count, Rng& rng);

/// The state b -> tau(a b) attached to a density element a.
struct StateFunctional {
  AlgebraShape shape;
  std::vector<Matrix> coefficients;  // w_k * a_k^T, so eval is an entrywise dot

  cplx eval(const Element& b) const;
};

StateFunctional state_map(const Trace& tau, const DensityElement& a);

/// sqrt(1 - tau(|sqrt(x) sqrt(y)|)), computed through functional calculus.
/// The inner trace is clamped onto [0, 1]; drifting past by more than 1e-8
/// is a numerical-consistency error.
double bures_distance(const Trace& tau, const DensityElement& x, const DensityElement& y);

/// Diagonal-case oracle: sqrt(1 - sum_k w_k sqrt(x_k y_k)).
double bures_commutative_closed_form(const Trace& tau, const DensityElement& x,
                                     const DensityElement& y);

/// Qubit oracle for a single 2x2 block with unit weight:
/// tau(|sqrt x sqrt y|)^2 = tr(xy) + 2 sqrt(det x det y).
double fidelity_2x2_bures(const DensityElement& x, const DensityElement& y);

/// Monge-Kantorovich metric between the states of x and y:
///   sup { |tau(xa) - tau(ya)| : L(a) <= 1 }
/// solved as a dense LP after quotienting out the constant direction.
double mk_distance_lp(const Trace& tau, const Seminorm& l, const DensityElement& x,
                      const DensityElement& y);

/// Vertex-enumeration oracle for n <= 4: the optimum over the slab polytope
/// is attained at a vertex; enumerate all (n-1)-subsets of active constraints.
double mk_distance_bruteforce(const Trace& tau, const Seminorm& l, const DensityElement& x,
                              const DensityElement& y);

enum class MetricKind { bures, cstar, quantum };

std::string metric_name(MetricKind m);

struct AxiomViolation {
  int trial = 0;
  uint64_t seed = 0;
  std::string kind;     // "symmetry" | "triangle" | "identity" | "nonnegative"
  double magnitude = 0.0;
  std::string inputs_digest;
};

struct TrialRecord {
  int trial = 0;
  uint64_t seed = 0;
  std::string inputs_digest;
  double d_xy = 0.0, d_yz = 0.0, d_xz = 0.0;
};

struct AxiomReport {
  MetricKind metric = MetricKind::bures;
  AlgebraShape shape;
  uint64_t seed = 0;
  int trials = 0;
  double triangle_slack = 0.0;
  std::vector<AxiomViolation> violations;
  std::vector<TrialRecord> records;  // capped at max_recorded
  double worst_triangle_deficit = 0.0;
  double worst_asymmetry = 0.0;

  bool passed() const { return violations.empty(); }
  nlohmann::json to_json() const;
};

/// Spot-checks metric axioms on random triples: nonnegativity, symmetry
/// within 1e-10, identity of indiscernibles against the C*-distance, and
/// the triangle inequality with slack >= -1e-9.
AxiomReport metric_axiom_suite(MetricKind metric, const AlgebraShape& shape, const Trace& tau,
                               int trials, uint64_t seed,
                               const Seminorm* l = nullptr, int max_recorded = 1000,
                               double triangle_slack = 1e-9);

struct ProbeRow {
  int k = 0;
  double d_cstar = 0.0;
  double d_bures = 0.0;
};

/// Distances from x_k = normalize(x + h/k) back to x for k = 1..K.
/// Positivity failure of x + h raises a resample signal. The emitted table
/// must satisfy d_bures <= 1e-4 wherever d_cstar <= 1e-8.
std::vector<ProbeRow> convergence_transfer_probe(const Trace& tau, const DensityElement& x,
                                                 const Element& h, int count);

/// The x_k family behind the probe, for callers that need more columns.
std::vector<DensityElement> probe_family(const Trace& tau, const DensityElement& x,
                                         const Element& h, int count);

}  // namespace denmet
