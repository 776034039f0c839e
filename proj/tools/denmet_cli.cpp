// Experiments runner on top of the denmet C API.
//
// Exit codes: 0 success, 1 assertion failure, 2 usage error, 3 I/O error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "denmet/denmet.h"

using nlohmann::json;

namespace {

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { dm_string_free(ptr); }
};

int run(const json& config, const std::string& out_path) {
  OwnedString result;
  const dm_status st = dm_experiment_run(config.dump().c_str(), &result.ptr);
  if (st != DM_OK) {
    std::cerr << "denmet: " << dm_last_error() << "\n";
    return st == DM_ERR_PARSE || st == DM_ERR_BAD_ARGUMENT ? 2 : 1;
  }

  const json res = json::parse(result.ptr);
  for (const auto& msg : res["messages"]) std::cerr << msg.get<std::string>() << "\n";

  const std::string artifact = res["artifact"].get<std::string>();
  if (!artifact.empty()) {
    if (out_path.empty()) {
      std::cout << artifact;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      out << artifact;
      out.flush();
      if (!out) {
        std::cerr << "denmet: cannot write " << out_path << "\n";
        return 3;
      }
    }
  }
  return res["exit_code"].get<int>();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"denmet experiments: density-space metrics on finite-dimensional C*-algebras"};
  app.footer(
      "experiments: strict-fineness, c2-inequivalence, equivalence-suite,\n"
      "             property-suites, ramp-plot\n"
      "Flags override keys of the same name in --config.");

  std::string experiment, out_path, format, config_path;
  uint64_t seed = 0;
  int trials = -1, nmax = -1, kmax = -1, grid = -1;
  double tolerance = 0.0;

  app.add_option("--experiment", experiment, "experiment name");
  app.add_option("--out", out_path, "artifact path (stdout when omitted)");
  app.add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", seed, "RNG seed");
  app.add_option("--trials", trials, "trials per property suite");
  app.add_option("--nmax", nmax, "last n of the strict-fineness table");
  app.add_option("--kmax", kmax, "ladder length / probe steps");
  app.add_option("--grid", grid, "grid points for ramp-plot");
  app.add_option("--tolerance", tolerance, "override check tolerances (property-suites)");
  app.add_option("--config", config_path, "JSON config file supplying the same keys");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  json config = json::object();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "denmet: cannot read config " << config_path << "\n";
      return 3;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    config = json::parse(buf.str(), nullptr, false);
    if (config.is_discarded() || !config.is_object()) {
      std::cerr << "denmet: config " << config_path << " is not a JSON object\n";
      return 2;
    }
    if (config.contains("out")) {  // output path is owned by the CLI
      if (out_path.empty() && config["out"].is_string())
        out_path = config["out"].get<std::string>();
      config.erase("out");
    }
  }

  // flags win over config-file keys
  if (!experiment.empty()) config["experiment"] = experiment;
  if (!format.empty()) config["format"] = format;
  if (app.count("--seed")) config["seed"] = seed;
  if (trials >= 0) config["trials"] = trials;
  if (nmax >= 0) config["nmax"] = nmax;
  if (kmax >= 0) config["kmax"] = kmax;
  if (grid >= 0) config["grid"] = grid;
  if (tolerance > 0.0) config["tolerance"] = tolerance;

  if (!config.contains("experiment")) {
    std::cerr << "denmet: --experiment is required (see --help)\n";
    return 2;
  }
  return run(config, out_path);
}
