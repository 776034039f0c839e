#include "experiments.hpp"

#include <algorithm>
#include <cmath>

#include "hermitian.hpp"

namespace denmet {

using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;
constexpr int kC2DefaultKmax = 20;
constexpr int kC2KmaxLimit = 24;  // the 4^-k ladder runs out of mantissa past this
constexpr int kProbeDefaultSteps = 500;
constexpr int kEquivalenceFamilies = 20;
constexpr double kProbePerturbationScale = 2e-6;
constexpr double kColumnCrossesBelow = 1e-6;
constexpr double kColumnFinalBelow = 1e-4;
constexpr int kMaxRecordedTrials = 200;

ExperimentResult usage(std::string msg) {
  ExperimentResult r;
  r.status = RunStatus::usage_error;
  r.messages.push_back(std::move(msg));
  return r;
}

std::string shape_id(const AlgebraShape& shape) {
  std::string s;
  for (size_t i = 0; i < shape.block_dims.size(); ++i) {
    if (i) s += 'x';
    s += std::to_string(shape.block_dims[i]);
  }
  return s;
}

std::string csv_provenance(const json& cfgj) {
  std::string s = "# schema_version=" + std::to_string(kSchemaVersion) + "\n";
  s += "# experiment=" + cfgj["experiment"].get<std::string>() + "\n";
  for (auto it = cfgj.begin(); it != cfgj.end(); ++it) {
    if (it.key() == "experiment") continue;
    s += "# " + it.key() + "=" +
         (it->is_string() ? it->get<std::string>() : it->dump()) + "\n";
  }
  return s;
}

json json_artifact_skeleton(const json& cfgj) {
  return json{{"schema_version", kSchemaVersion},
              {"experiment", cfgj["experiment"]},
              {"config", cfgj}};
}

void finish_json_artifact(ExperimentResult& res, json& artifact) {
  artifact["status"] = res.status == RunStatus::ok ? "ok" : "assertion_failed";
  artifact["messages"] = res.messages;
  res.artifact = artifact.dump(2) + "\n";
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  if (!j.is_object()) fail(errc::parse, "config: expected a JSON object");
  ExperimentConfig cfg;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const json& v = it.value();
    if (key == "experiment" && v.is_string())
      cfg.experiment = v.get<std::string>();
    else if (key == "format" && v.is_string())
      cfg.format = v.get<std::string>();
    else if (key == "seed" && v.is_number_unsigned())
      cfg.seed = v.get<uint64_t>();
    else if (key == "trials" && v.is_number_integer())
      cfg.trials = v.get<int>();
    else if (key == "nmax" && v.is_number_integer())
      cfg.nmax = v.get<int>();
    else if (key == "kmax" && v.is_number_integer())
      cfg.kmax = v.get<int>();
    else if (key == "grid" && v.is_number_integer())
      cfg.grid = v.get<int>();
    else if (key == "tolerance" && v.is_number())
      cfg.tolerance = v.get<double>();
    else
      fail(errc::parse, "config: unknown or mistyped key '" + key + "'");
  }
  return cfg;
}

json ExperimentConfig::to_json() const {
  return json{{"experiment", experiment}, {"format", format},   {"seed", seed},
              {"trials", trials},         {"nmax", nmax},       {"kmax", kmax},
              {"grid", grid},             {"tolerance", tolerance}};
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "strict-fineness", "c2-inequivalence", "equivalence-suite", "property-suites",
      "ramp-plot"};
  return names;
}

ExperimentResult run_strict_fineness(const ExperimentConfig& cfg) {
  if (cfg.nmax < 1) return usage("strict-fineness: empty n-range (nmax must be >= 1)");
  const std::string fmt = cfg.format.empty() ? "csv" : cfg.format;
  if (fmt != "csv" && fmt != "json") return usage("strict-fineness: format must be csv or json");

  ExperimentResult res;
  res.format = fmt;

  const std::vector<FinenessRow> rows = strict_fineness_table(cfg.nmax);
  std::vector<double> residuals;
  residuals.reserve(rows.size());
  double max_residual = 0.0;
  for (const FinenessRow& row : rows) {
    const double resid = std::abs(row.bures - ramp_bures_gap(row.n));
    residuals.push_back(resid);
    max_residual = std::max(max_residual, resid);
    if (resid > 1e-8) {
      res.status = RunStatus::assertion_failed;
      res.messages.push_back("strict-fineness: row n=" + std::to_string(row.n) +
                             " residual " + format_sig(resid) + " exceeds 1e-8");
    }
  }

  ExperimentConfig resolved = cfg;
  resolved.format = fmt;
  const json cfgj = resolved.to_json();
  if (fmt == "csv") {
    std::string out = csv_provenance(cfgj);
    out += "n,bures,uniform,residual\n";
    for (size_t i = 0; i < rows.size(); ++i) {
      out += std::to_string(rows[i].n) + ',' + format_sig(rows[i].bures) + ',' +
             format_sig(rows[i].uniform) + ',' + format_sig(residuals[i]) + '\n';
    }
    res.artifact = std::move(out);
  } else {
    json artifact = json_artifact_skeleton(cfgj);
    json jrows = json::array();
    for (size_t i = 0; i < rows.size(); ++i)
      jrows.push_back({{"n", rows[i].n},
                       {"bures", rows[i].bures},
                       {"uniform", rows[i].uniform},
                       {"residual", residuals[i]}});
    artifact["rows"] = std::move(jrows);
    artifact["max_residual"] = max_residual;
    finish_json_artifact(res, artifact);
  }
  return res;
}

ExperimentResult run_c2_inequivalence(const ExperimentConfig& cfg) {
  if (cfg.kmax == 0) return usage("c2-inequivalence: kmax must be >= 1");
  const int kmax = cfg.kmax < 0 ? kC2DefaultKmax : cfg.kmax;
  if (kmax < 1) return usage("c2-inequivalence: kmax must be >= 1");
  if (kmax > kC2KmaxLimit)
    return usage("c2-inequivalence: kmax above " + std::to_string(kC2KmaxLimit) +
                 " exceeds double-precision resolution of the 4^-k ladder");
  const std::string fmt = cfg.format.empty() ? "csv" : cfg.format;
  if (fmt != "csv" && fmt != "json") return usage("c2-inequivalence: format must be csv or json");

  ExperimentResult res;
  res.format = fmt;

  const AlgebraShape c2{1, 1};
  const Trace tau = Trace::uniform(c2);
  const Seminorm lb = Seminorm::difference_c2();
  const DensityElement x = normalize_to_density(tau, Element::diagonal(c2, {1.0, 0.0}));

  struct Row {
    int k;
    double y1, bures, quantum, ratio, model;
  };
  std::vector<Row> rows;
  rows.reserve(kmax);
  for (int k = 1; k <= kmax; ++k) {
    const double t = std::ldexp(1.0, -2 * k);  // 4^-k, exact
    const double y1 = 1.0 - t;
    const DensityElement y = normalize_to_density(tau, Element::diagonal(c2, {y1, t}));
    Row row;
    row.k = k;
    row.y1 = y1;
    row.bures = bures_distance(tau, x, y);
    row.quantum = mk_distance_lp(tau, lb, x, y);
    row.ratio = row.bures / row.quantum;
    row.model = 1.0 / std::sqrt(2.0 * t);
    rows.push_back(row);
  }

  for (size_t i = 0; i + 1 < rows.size(); ++i)
    if (!(rows[i + 1].ratio > rows[i].ratio)) {
      res.status = RunStatus::assertion_failed;
      res.messages.push_back("c2-inequivalence: ratio not strictly increasing at k=" +
                             std::to_string(rows[i + 1].k));
    }
  if (kmax >= 2) {
    const double growth = rows.back().ratio / rows.front().ratio;
    const double required = 0.9 * std::ldexp(1.0, kmax - 1);
    if (growth < required) {
      res.status = RunStatus::assertion_failed;
      res.messages.push_back("c2-inequivalence: ratio growth " + format_sig(growth) +
                             " below required " + format_sig(required));
    }
  }
  for (const Row& row : rows) {
    const double t = 1.0 - row.y1;
    if (t <= 1e-6 && std::abs(row.ratio / row.model - 1.0) > 0.01) {
      res.status = RunStatus::assertion_failed;
      res.messages.push_back("c2-inequivalence: ratio off the 1/sqrt(2(1-y1)) model by " +
                             format_sig(std::abs(row.ratio / row.model - 1.0)) +
                             " at k=" + std::to_string(row.k));
    }
  }

  ExperimentConfig resolved = cfg;
  resolved.format = fmt;
  resolved.kmax = kmax;
  const json cfgj = resolved.to_json();
  if (fmt == "csv") {
    std::string out = csv_provenance(cfgj);
    out += "k,y1,bures,quantum,ratio,model\n";
    for (const Row& row : rows)
      out += std::to_string(row.k) + ',' + format_sig(row.y1) + ',' + format_sig(row.bures) +
             ',' + format_sig(row.quantum) + ',' + format_sig(row.ratio) + ',' +
             format_sig(row.model) + '\n';
    res.artifact = std::move(out);
  } else {
    json artifact = json_artifact_skeleton(cfgj);
    json jrows = json::array();
    for (const Row& row : rows)
      jrows.push_back({{"k", row.k},
                       {"y1", row.y1},
                       {"bures", row.bures},
                       {"quantum", row.quantum},
                       {"ratio", row.ratio},
                       {"model", row.model}});
    artifact["rows"] = std::move(jrows);
    finish_json_artifact(res, artifact);
  }
  return res;
}

namespace {

struct ProbeSetup {
  DensityElement x;
  Element h;
};

// Full-rank base point (identity-mixed) and a trace-centered unit-norm
// perturbation scaled down to kProbePerturbationScale.
ProbeSetup make_probe_family(const AlgebraShape& shape, const Trace& tau, uint64_t seed) {
  const Element unit =
      Element::identity(shape).scaled(1.0 / trace_eval_real(tau, Element::identity(shape)));
  const DensityElement raw = sample_density(tau, derive_seed(seed, 1));
  const DensityElement x =
      normalize_to_density(tau, raw.element() + 0.5 * unit);

  for (uint64_t attempt = 0; attempt < 32; ++attempt) {
    Rng rng(derive_seed(seed, 2 + attempt));
    Element h = sample_hermitian(shape, rng);
    const double th = trace_eval_real(tau, h);
    h = h + unit.scaled(-th);  // tau(h) = 0, so normalization stays the identity
    const double norm = cstar_norm(h);
    if (norm < 1e-9) continue;
    h = h.scaled(kProbePerturbationScale / norm);
    const PositivityCertificate cert = check_positive(x.element() + h);
    if (!cert.positive) continue;
    return ProbeSetup{x, h};
  }
  fail(errc::no_convergence, "equivalence-suite: could not draw a valid probe perturbation");
}

}  // namespace

ExperimentResult run_equivalence_suite(const ExperimentConfig& cfg) {
  if (cfg.kmax == 0) return usage("equivalence-suite: kmax must be >= 1");
  const int steps = cfg.kmax < 0 ? kProbeDefaultSteps : cfg.kmax;
  if (steps < 1) return usage("equivalence-suite: kmax must be >= 1");
  const std::string fmt = cfg.format.empty() ? "csv" : cfg.format;
  if (fmt != "csv" && fmt != "json")
    return usage("equivalence-suite: format must be csv or json");

  ExperimentResult res;
  res.format = fmt;

  struct ShapeCase {
    AlgebraShape shape;
    std::optional<Seminorm> seminorm;
  };
  std::vector<ShapeCase> cases;
  cases.push_back({AlgebraShape{2}, std::nullopt});
  cases.push_back({AlgebraShape{3}, std::nullopt});
  cases.push_back({AlgebraShape{1, 1}, Seminorm::difference_c2()});
  cases.push_back({AlgebraShape{1, 1, 1},
                   Seminorm(AlgebraShape{1, 1, 1}, {{1, -1, 0}, {0, 1, -1}})});

  struct FamilyTable {
    std::string shape;
    int family = 0;
    std::vector<ProbeRow> rows;
    std::vector<double> quantum;  // empty when the shape is noncommutative
  };
  std::vector<FamilyTable> tables;

  auto check_column = [&](const std::string& shape, int family, const char* name,
                          const std::vector<double>& column) {
    double lowest = std::numeric_limits<double>::infinity();
    for (double v : column) lowest = std::min(lowest, v);
    if (!(lowest < kColumnCrossesBelow)) {
      res.status = RunStatus::assertion_failed;
      res.messages.push_back("equivalence-suite: " + shape + " family " +
                             std::to_string(family) + " column " + name +
                             " never crosses below " + format_sig(kColumnCrossesBelow));
    }
    if (!(column.back() < kColumnFinalBelow)) {
      res.status = RunStatus::assertion_failed;
      res.messages.push_back("equivalence-suite: " + shape + " family " +
                             std::to_string(family) + " column " + name + " ends at " +
                             format_sig(column.back()));
    }
  };

  for (size_t si = 0; si < cases.size(); ++si) {
    const ShapeCase& sc = cases[si];
    const Trace tau = Trace::uniform(sc.shape);
    const std::string sid = shape_id(sc.shape);
    for (int family = 0; family < kEquivalenceFamilies; ++family) {
      const uint64_t family_seed = derive_seed(cfg.seed, si * 100003 + family);
      const ProbeSetup setup = make_probe_family(sc.shape, tau, family_seed);

      FamilyTable table;
      table.shape = sid;
      table.family = family;
      try {
        table.rows = convergence_transfer_probe(tau, setup.x, setup.h, steps);
      } catch (const error& e) {
        res.status = RunStatus::assertion_failed;
        res.messages.push_back(std::string("equivalence-suite: ") + e.what());
        continue;
      }

      std::vector<double> cstar_col, bures_col;
      cstar_col.reserve(steps);
      bures_col.reserve(steps);
      for (const ProbeRow& row : table.rows) {
        cstar_col.push_back(row.d_cstar);
        bures_col.push_back(row.d_bures);
      }
      check_column(sid, family, "cstar", cstar_col);
      check_column(sid, family, "bures", bures_col);

      if (sc.seminorm) {
        const std::vector<DensityElement> family_pts =
            probe_family(tau, setup.x, setup.h, steps);
        table.quantum.reserve(steps);
        for (const DensityElement& xk : family_pts)
          table.quantum.push_back(mk_distance_lp(tau, *sc.seminorm, xk, setup.x));
        check_column(sid, family, "quantum", table.quantum);
      }
      tables.push_back(std::move(table));
    }
  }

  ExperimentConfig resolved = cfg;
  resolved.format = fmt;
  resolved.kmax = steps;
  const json cfgj = resolved.to_json();
  if (fmt == "csv") {
    std::string out = csv_provenance(cfgj);
    out += "shape,family,k,cstar,bures,quantum\n";
    for (const FamilyTable& table : tables)
      for (size_t i = 0; i < table.rows.size(); ++i) {
        const ProbeRow& row = table.rows[i];
        out += table.shape + ',' + std::to_string(table.family) + ',' +
               std::to_string(row.k) + ',' + format_sig(row.d_cstar) + ',' +
               format_sig(row.d_bures) + ',';
        if (!table.quantum.empty()) out += format_sig(table.quantum[i]);
        out += '\n';
      }
    res.artifact = std::move(out);
  } else {
    json artifact = json_artifact_skeleton(cfgj);
    json jfams = json::array();
    for (const FamilyTable& table : tables) {
      json jrows = json::array();
      for (size_t i = 0; i < table.rows.size(); ++i) {
        json jr = {{"k", table.rows[i].k},
                   {"cstar", table.rows[i].d_cstar},
                   {"bures", table.rows[i].d_bures}};
        if (!table.quantum.empty()) jr["quantum"] = table.quantum[i];
        jrows.push_back(std::move(jr));
      }
      jfams.push_back(
          {{"shape", table.shape}, {"family", table.family}, {"rows", std::move(jrows)}});
    }
    artifact["families"] = std::move(jfams);
    finish_json_artifact(res, artifact);
  }
  return res;
}

namespace {

struct SuiteViolation {
  std::string suite;
  int index = 0;
  uint64_t seed = 0;
  double magnitude = 0.0;
  std::string inputs_digest;
};

json violations_json(const std::vector<SuiteViolation>& violations) {
  json arr = json::array();
  for (const SuiteViolation& v : violations)
    arr.push_back({{"suite", v.suite},
                   {"index", v.index},
                   {"seed", v.seed},
                   {"magnitude", v.magnitude},
                   {"inputs_digest", v.inputs_digest}});
  return arr;
}

std::string pair_digest(const Element& a, const Element& b) {
  uint64_t h = a.digest();
  h = fnv1a64(&h, sizeof h, b.digest());
  return hex64(h);
}

}  // namespace

ExperimentResult run_property_suites(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) return usage("property-suites: trials must be >= 1");
  const std::string fmt = cfg.format.empty() ? "json" : cfg.format;
  if (fmt != "json") return usage("property-suites: reports are JSON only");

  ExperimentResult res;
  res.format = fmt;

  auto tol_or = [&](double dflt) { return cfg.tolerance > 0.0 ? cfg.tolerance : dflt; };
  const int trials = cfg.trials;
  std::vector<SuiteViolation> violations;

  ExperimentConfig resolved = cfg;
  resolved.format = fmt;
  json artifact = json_artifact_skeleton(resolved.to_json());

  // metric axioms across shapes
  {
    const AlgebraShape m2{2}, m3{3}, c2{1, 1}, c3{1, 1, 1};
    Rng seminorm_rng(derive_seed(cfg.seed, 777));
    const Seminorm lb = Seminorm::difference_c2();
    const Seminorm random_l3 = sample_seminorm(c3, 3, seminorm_rng);
    struct Combo {
      MetricKind metric;
      AlgebraShape shape;
      const Seminorm* seminorm;
    };
    const std::vector<Combo> combos = {
        {MetricKind::bures, m2, nullptr},   {MetricKind::bures, m3, nullptr},
        {MetricKind::bures, c2, nullptr},   {MetricKind::bures, c3, nullptr},
        {MetricKind::cstar, m2, nullptr},   {MetricKind::cstar, m3, nullptr},
        {MetricKind::cstar, c2, nullptr},   {MetricKind::cstar, c3, nullptr},
        {MetricKind::quantum, c2, &lb},     {MetricKind::quantum, c3, &random_l3},
    };
    json jreports = json::array();
    for (size_t ci = 0; ci < combos.size(); ++ci) {
      const Combo& combo = combos[ci];
      const Trace tau = Trace::uniform(combo.shape);
      const AxiomReport report = metric_axiom_suite(
          combo.metric, combo.shape, tau, trials, derive_seed(cfg.seed, 1000 + ci),
          combo.seminorm, kMaxRecordedTrials, tol_or(1e-9));
      for (const AxiomViolation& v : report.violations)
        violations.push_back({"metric_axioms[" + metric_name(combo.metric) + "," +
                                  shape_id(combo.shape) + "]",
                              v.trial, v.seed, v.magnitude, v.inputs_digest});
      jreports.push_back(report.to_json());
    }
    artifact["metric_axioms"] = std::move(jreports);
  }

  // Bures against the two independent oracles
  {
    const double limit = tol_or(1e-9);
    double max_gap_commutative = 0.0, max_gap_qubit = 0.0;
    for (int i = 0; i < trials; ++i) {
      const uint64_t s = derive_seed(cfg.seed, 2000 + i);
      const int n = 2 + (i % 5);
      const AlgebraShape shape(std::vector<int>(n, 1));
      const Trace tau = Trace::uniform(shape);
      const DensityElement x = sample_density(tau, derive_seed(s, 1));
      const DensityElement y = sample_density(tau, derive_seed(s, 2));
      const double gap =
          std::abs(bures_distance(tau, x, y) - bures_commutative_closed_form(tau, x, y));
      max_gap_commutative = std::max(max_gap_commutative, gap);
      if (gap > limit)
        violations.push_back(
            {"bures_oracle_commutative", i, s, gap, pair_digest(x.element(), y.element())});

      const AlgebraShape qubit{2};
      const Trace tr = Trace::uniform(qubit);
      const DensityElement qx = sample_density(tr, derive_seed(s, 3));
      const DensityElement qy = sample_density(tr, derive_seed(s, 4));
      const double qgap = std::abs(bures_distance(tr, qx, qy) - fidelity_2x2_bures(qx, qy));
      max_gap_qubit = std::max(max_gap_qubit, qgap);
      if (qgap > limit)
        violations.push_back(
            {"bures_oracle_qubit", i, s, qgap, pair_digest(qx.element(), qy.element())});
    }
    artifact["bures_oracles"] = {{"pairs", trials},
                                 {"tolerance", limit},
                                 {"max_gap_commutative", max_gap_commutative},
                                 {"max_gap_qubit", max_gap_qubit}};
  }

  // LP against vertex enumeration
  {
    const double limit = tol_or(1e-9);
    double max_gap = 0.0;
    for (int i = 0; i < trials; ++i) {
      const uint64_t s = derive_seed(cfg.seed, 3000 + i);
      const int n = 3 + (i % 2);
      const AlgebraShape shape(std::vector<int>(n, 1));
      const Trace tau = Trace::uniform(shape);
      Rng rng(derive_seed(s, 1));
      const Seminorm l = sample_seminorm(shape, n - 1 + (i % 3), rng);
      const DensityElement x = sample_density(tau, derive_seed(s, 2));
      const DensityElement y = sample_density(tau, derive_seed(s, 3));
      const double gap =
          std::abs(mk_distance_lp(tau, l, x, y) - mk_distance_bruteforce(tau, l, x, y));
      max_gap = std::max(max_gap, gap);
      if (gap > limit)
        violations.push_back({"lp_oracle", i, s, gap, pair_digest(x.element(), y.element())});
    }
    artifact["lp_oracle"] = {{"instances", trials}, {"tolerance", limit}, {"max_gap", max_gap}};
  }

  // eigensolver residuals and the square-root identity
  {
    const double eig_limit = tol_or(1e-10);
    const double sqrt_limit = tol_or(1e-10);
    double max_residual = 0.0, max_unitarity = 0.0, max_sqrt_gap = 0.0;
    const std::vector<AlgebraShape> sqrt_shapes = {AlgebraShape{2}, AlgebraShape{3},
                                                   AlgebraShape{2, 1}, AlgebraShape{4}};
    for (int i = 0; i < trials; ++i) {
      const uint64_t s = derive_seed(cfg.seed, 4000 + i);
      Rng rng(s);
      const int dim = 1 + (i % 8);
      Matrix g(dim, dim);
      for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) g(r, c) = rng.gaussian_complex();
      const Matrix a = 0.5 * (g + g.adjoint());
      const EigenDecomposition dec = hermitian_eig(a);
      const double opnorm =
          std::max(std::abs(dec.eigenvalues[0]), std::abs(dec.eigenvalues[dim - 1]));
      double residual = 0.0;
      for (int c = 0; c < dim; ++c)
        residual = std::max(
            residual,
            (a * dec.eigenvectors.col(c) - dec.eigenvalues[c] * dec.eigenvectors.col(c))
                .norm());
      const double unitarity =
          (dec.eigenvectors.adjoint() * dec.eigenvectors - Matrix::Identity(dim, dim)).norm();
      max_residual = std::max(max_residual, residual / std::max(1.0, opnorm));
      max_unitarity = std::max(max_unitarity, unitarity);
      if (residual > eig_limit * std::max(1.0, opnorm) || unitarity > eig_limit) {
        uint64_t digest = 0;
        for (int c = 0; c < dim; ++c)
          for (int r = 0; r < dim; ++r) {
            const double re = a(r, c).real(), im = a(r, c).imag();
            digest = fnv1a64(&re, sizeof re, digest);
            digest = fnv1a64(&im, sizeof im, digest);
          }
        violations.push_back(
            {"eigensolver", i, s, std::max(residual, unitarity), hex64(digest)});
      }

      const AlgebraShape& shape = sqrt_shapes[i % sqrt_shapes.size()];
      Rng rng2(derive_seed(s, 9));
      const Element b = sample_element(shape, rng2);
      const Element pos = b.adjoint() * b;
      const Element root = matrix_sqrt(pos);
      const double gap = cstar_distance(root * root, pos) / std::max(1.0, cstar_norm(pos));
      max_sqrt_gap = std::max(max_sqrt_gap, gap);
      if (gap > sqrt_limit)
        violations.push_back({"sqrt_identity", i, s, gap, hex64(pos.digest())});
    }
    artifact["eigensolver"] = {{"matrices", trials},
                               {"tolerance", eig_limit},
                               {"max_residual", max_residual},
                               {"max_unitarity", max_unitarity},
                               {"max_sqrt_gap", max_sqrt_gap}};
  }

  // the C^2 closed form ties the quantum metric to |x1 - y1| and the C*-metric
  {
    const double limit = tol_or(1e-9);
    const AlgebraShape c2{1, 1};
    const Trace tau = Trace::uniform(c2);
    const Seminorm lb = Seminorm::difference_c2();
    double max_gap_closed = 0.0, max_gap_cstar = 0.0;
    for (int i = 0; i < trials; ++i) {
      const uint64_t s = derive_seed(cfg.seed, 5000 + i);
      const DensityElement x = sample_density(tau, derive_seed(s, 1));
      const DensityElement y = sample_density(tau, derive_seed(s, 2));
      const double mk = mk_distance_lp(tau, lb, x, y);
      const double closed =
          std::abs(x.element().commutative_values()[0] - y.element().commutative_values()[0]);
      const double cstar = cstar_distance(x.element(), y.element());
      const double gap_closed = std::abs(mk - closed);
      const double gap_cstar = std::abs(mk - cstar);
      max_gap_closed = std::max(max_gap_closed, gap_closed);
      max_gap_cstar = std::max(max_gap_cstar, gap_cstar);
      if (gap_closed > limit || gap_cstar > limit)
        violations.push_back({"c2_closed_form", i, s, std::max(gap_closed, gap_cstar),
                              pair_digest(x.element(), y.element())});
    }
    artifact["c2_closed_form"] = {{"pairs", trials},
                                  {"tolerance", limit},
                                  {"max_gap_vs_closed_form", max_gap_closed},
                                  {"max_gap_vs_cstar", max_gap_cstar}};
  }

  artifact["violations"] = violations_json(violations);
  artifact["violation_count"] = violations.size();
  if (!violations.empty()) {
    res.status = RunStatus::assertion_failed;
    res.messages.push_back("property-suites: " + std::to_string(violations.size()) +
                           " violation(s), see the report");
  }
  finish_json_artifact(res, artifact);
  return res;
}

ExperimentResult run_ramp_plot(const ExperimentConfig& cfg) {
  if (cfg.grid < 2) return usage("ramp-plot: grid must be >= 2");
  const std::string fmt = cfg.format.empty() ? "csv" : cfg.format;
  if (fmt != "csv") return usage("ramp-plot: plot samples are CSV only");

  ExperimentResult res;
  res.format = fmt;
  ExperimentConfig resolved = cfg;
  resolved.format = fmt;
  res.artifact = csv_provenance(resolved.to_json()) + ramp_samples_csv(cfg.grid);
  return res;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  try {
    if (cfg.experiment == "strict-fineness") return run_strict_fineness(cfg);
    if (cfg.experiment == "c2-inequivalence") return run_c2_inequivalence(cfg);
    if (cfg.experiment == "equivalence-suite") return run_equivalence_suite(cfg);
    if (cfg.experiment == "property-suites") return run_property_suites(cfg);
    if (cfg.experiment == "ramp-plot") return run_ramp_plot(cfg);
    std::string names;
    for (const std::string& n : experiment_names()) names += (names.empty() ? "" : ", ") + n;
    return usage("unknown experiment '" + cfg.experiment + "' (expected one of: " + names + ")");
  } catch (const error& e) {
    ExperimentResult res;
    res.status = (e.code() == errc::bad_argument || e.code() == errc::parse)
                     ? RunStatus::usage_error
                     : RunStatus::assertion_failed;
    res.messages.push_back(e.what());
    return res;
  } catch (const std::exception& e) {
    ExperimentResult res;
    res.status = RunStatus::assertion_failed;
    res.messages.push_back(e.what());
    return res;
  }
}

}  // namespace denmet
