#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "metrics.hpp"
#include "piecewise.hpp"

namespace denmet {

/// Parameters common to all experiments. kmax < 0 means "experiment default"
/// (20 for c2-inequivalence, 500 probe steps for equivalence-suite);
/// tolerance <= 0 keeps each check's own tolerance.
struct ExperimentConfig {
  std::string experiment;
  std::string format;  // "", "csv" or "json"; empty picks the experiment default
  uint64_t seed = 42;
  int trials = 1000;
  int nmax = 100;
  int kmax = -1;
  int grid = 1000;
  double tolerance = 0.0;

  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

enum class RunStatus { ok = 0, assertion_failed = 1, usage_error = 2, io_error = 3 };

struct ExperimentResult {
  RunStatus status = RunStatus::ok;
  std::string format;  // resolved: "csv" or "json"
  std::string artifact;
  std::vector<std::string> messages;
};

const std::vector<std::string>& experiment_names();

/// Dispatch on config.experiment; never throws. Usage problems (unknown
/// experiment, bad ranges, bad format) come back as usage_error, violated
/// in-experiment assertions as assertion_failed.
ExperimentResult run_experiment(const ExperimentConfig& config);

// individual runners, also used directly by the acceptance suite
ExperimentResult run_strict_fineness(const ExperimentConfig& config);
ExperimentResult run_c2_inequivalence(const ExperimentConfig& config);
ExperimentResult run_equivalence_suite(const ExperimentConfig& config);
ExperimentResult run_property_suites(const ExperimentConfig& config);
ExperimentResult run_ramp_plot(const ExperimentConfig& config);

}  // namespace denmet
