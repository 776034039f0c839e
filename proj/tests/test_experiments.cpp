#include <doctest.h>

#include <json.hpp>

#include "experiments.hpp"

using namespace denmet;
using nlohmann::json;

namespace {

ExperimentConfig config(const std::string& experiment) {
  ExperimentConfig cfg;
  cfg.experiment = experiment;
  return cfg;
}

}  // namespace

TEST_CASE("config parsing") {
  const auto cfg = ExperimentConfig::from_json(
      json{{"experiment", "ramp-plot"}, {"grid", 10}, {"seed", 7}});
  CHECK(cfg.experiment == "ramp-plot");
  CHECK(cfg.grid == 10);
  CHECK(cfg.seed == 7);
  CHECK(cfg.kmax == -1);

  CHECK_THROWS_AS(ExperimentConfig::from_json(json{{"experimnt", "x"}}), error);
  CHECK_THROWS_AS(ExperimentConfig::from_json(json{{"trials", "many"}}), error);
  CHECK_THROWS_AS(ExperimentConfig::from_json(json::array()), error);
}

TEST_CASE("unknown experiment is a usage error") {
  const auto res = run_experiment(config("does-not-exist"));
  CHECK(res.status == RunStatus::usage_error);
  REQUIRE(!res.messages.empty());
}

TEST_CASE("strict fineness runs") {
  auto cfg = config("strict-fineness");
  cfg.nmax = 10;
  const auto res = run_experiment(cfg);
  CHECK(res.status == RunStatus::ok);
  CHECK(res.format == "csv");
  CHECK(res.artifact.find("n,bures,uniform,residual\n") != std::string::npos);
  CHECK(res.artifact.find("# experiment=strict-fineness\n") != std::string::npos);
  // ten data rows
  size_t rows = 0;
  for (size_t pos = res.artifact.find('\n'); pos != std::string::npos;
       pos = res.artifact.find('\n', pos + 1))
    ++rows;
  CHECK(rows >= 11);

  cfg.nmax = 1;
  const auto single = run_experiment(cfg);
  CHECK(single.status == RunStatus::ok);
  CHECK(single.artifact.find("1,0.239146311738,1,") != std::string::npos);

  cfg.nmax = 0;
  CHECK(run_experiment(cfg).status == RunStatus::usage_error);

  cfg.nmax = 10;
  cfg.format = "json";
  const auto jres = run_experiment(cfg);
  CHECK(jres.status == RunStatus::ok);
  const json parsed = json::parse(jres.artifact);
  CHECK(parsed["rows"].size() == 10);
  CHECK(parsed["max_residual"].get<double>() <= 1e-8);
  CHECK(parsed["schema_version"].get<int>() == 1);
}

TEST_CASE("c2 inequivalence ladder") {
  auto cfg = config("c2-inequivalence");
  cfg.format = "json";
  const auto res = run_experiment(cfg);
  CHECK(res.status == RunStatus::ok);
  const json parsed = json::parse(res.artifact);
  REQUIRE(parsed["rows"].size() == 20);

  const auto& first = parsed["rows"][0];
  CHECK(first["y1"].get<double>() == 0.75);
  CHECK(first["quantum"].get<double>() == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(first["bures"].get<double>() ==
        doctest::Approx(std::sqrt(1.0 - std::sqrt(0.75))).epsilon(1e-12));

  double previous = 0.0;
  for (const auto& row : parsed["rows"]) {
    const double ratio = row["ratio"].get<double>();
    REQUIRE(ratio > previous);
    previous = ratio;
    if (1.0 - row["y1"].get<double>() <= 1e-6)
      REQUIRE(std::abs(ratio / row["model"].get<double>() - 1.0) <= 0.01);
  }

  cfg.kmax = 0;
  CHECK(run_experiment(cfg).status == RunStatus::usage_error);
  cfg.kmax = 400;
  CHECK(run_experiment(cfg).status == RunStatus::usage_error);
}

TEST_CASE("equivalence suite co-vanishing") {
  auto cfg = config("equivalence-suite");
  cfg.kmax = 300;  // shorter probes keep the unit test quick
  const auto res = run_experiment(cfg);
  for (const auto& m : res.messages) MESSAGE(m);
  CHECK(res.status == RunStatus::ok);
  CHECK(res.artifact.find("shape,family,k,cstar,bures,quantum\n") != std::string::npos);
  CHECK(res.artifact.find("\n1x1,0,1,") != std::string::npos);
  CHECK(res.artifact.find("\n3,19,300,") != std::string::npos);
}

TEST_CASE("property suites pass and are deterministic") {
  auto cfg = config("property-suites");
  cfg.trials = 60;
  const auto first = run_experiment(cfg);
  CHECK(first.status == RunStatus::ok);
  CHECK(first.format == "json");
  const auto second = run_experiment(cfg);
  CHECK(first.artifact == second.artifact);  // byte-identical rerun

  const json parsed = json::parse(first.artifact);
  CHECK(parsed["violation_count"].get<int>() == 0);
  CHECK(parsed["metric_axioms"].size() == 10);
  CHECK(parsed["status"] == "ok");

  // a different seed changes the sampled inputs but not the verdict
  cfg.seed = 777;
  const auto reseeded = run_experiment(cfg);
  CHECK(reseeded.status == RunStatus::ok);
  CHECK(reseeded.artifact != first.artifact);

  // csv is not a valid format for a report
  cfg.format = "csv";
  CHECK(run_experiment(cfg).status == RunStatus::usage_error);
}

TEST_CASE("property suites detect violations under an absurd tolerance") {
  auto cfg = config("property-suites");
  cfg.trials = 40;
  cfg.tolerance = 1e-15;
  const auto res = run_experiment(cfg);
  CHECK(res.status == RunStatus::assertion_failed);
  const json parsed = json::parse(res.artifact);
  REQUIRE(parsed["violation_count"].get<int>() > 0);
  // violations carry their reproducing seeds
  const auto& v = parsed["violations"][0];
  CHECK(v.contains("seed"));
  CHECK(v.contains("suite"));
  CHECK(v.contains("inputs_digest"));
}

TEST_CASE("ramp plot emission") {
  auto cfg = config("ramp-plot");
  cfg.grid = 11;
  const auto res = run_experiment(cfg);
  CHECK(res.status == RunStatus::ok);
  CHECK(res.artifact.find("x,f1,f2,f3\n") != std::string::npos);
  CHECK(res.artifact.find("\n1,2,2,2\n") != std::string::npos);

  cfg.grid = 1;
  CHECK(run_experiment(cfg).status == RunStatus::usage_error);
  cfg.grid = 11;
  cfg.format = "json";
  CHECK(run_experiment(cfg).status == RunStatus::usage_error);
}
