// Command-line front end: experiment runs, scenario validation, oracle suites.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oracles.hpp"
#include "stcomp/errors.hpp"
#include "stcomp/harness.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kAssertion = 2;
constexpr int kRuntime = 3;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

int run(const std::string& scenario, const std::string& experiment, int seeds, const std::string& out,
        const std::string& algorithms, bool verbose) {
  const stcomp::ScenarioConfig cfg = scenario.empty() ? stcomp::ScenarioConfig{} : stcomp::load_scenario(scenario);
  stcomp::validate(cfg);
  stcomp::ExperimentSpec spec = stcomp::default_experiment(experiment);
  if (seeds < 1) throw stcomp::Error(stcomp::ErrorCode::ValidationError, "seeds: must be at least 1");
  spec.trials = seeds;
  if (!algorithms.empty()) {
    spec.algorithms.clear();
    for (const auto& a : split(algorithms, ',')) spec.algorithms.push_back(stcomp::parse_algorithm(a));
  }
  const auto res = stcomp::run_experiment(spec, cfg, out, verbose);
  int infeasible = 0;
  for (const auto& r : res.rows) infeasible += r.feasible ? 0 : 1;
  std::printf("%s: %zu rows (%d infeasible) written to %s\n", spec.id.c_str(), res.rows.size(), infeasible,
              out.c_str());
  for (const auto& s : res.summary)
    std::printf("  %-8s %-16s x=%-10g mean=%.6f std=%.6f n=%d\n", std::string(stcomp::to_string(s.algorithm)).c_str(),
                s.series.c_str(), s.x, s.mean, s.std, s.n);
  return kOk;
}

int oracle(const std::string& check) {
  const auto rep = stcomp::oracle::run_suite(check);
  for (const auto& c : rep.checks) std::printf("%s  %s (%s)\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
  for (const auto& [k, v] : rep.stats) std::printf("  %s = %g\n", k.c_str(), v);
  return rep.passed() ? kOk : kAssertion;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Satellite-terrestrial edge computing energy minimisation"};
  app.require_subcommand(1);

  std::string scenario, experiment, out, algorithms, check;
  int seeds = 1;
  bool verbose = false;

  auto* run_cmd = app.add_subcommand("run", "run a Monte-Carlo experiment and write CSVs");
  run_cmd->add_option("--scenario", scenario, "JSON scenario overrides")->check(CLI::ExistingFile);
  run_cmd->add_option("--experiment", experiment, "experiment id")->required();
  run_cmd->add_option("--seeds", seeds, "trials per sweep point")->required();
  run_cmd->add_option("--out", out, "output directory")->required();
  run_cmd->add_option("--algorithms", algorithms, "comma-separated algorithm tags");
  run_cmd->add_flag("--verbose", verbose, "print per-row progress");

  auto* validate_cmd = app.add_subcommand("validate", "parse and validate a scenario file");
  validate_cmd->add_option("--scenario", scenario, "JSON scenario overrides")->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "run one of the reference-oracle suites");
  oracle_cmd->add_option("--check", check, "power, beamforming, offload or bessel")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kValidation;
  }

  try {
    if (*run_cmd) return run(scenario, experiment, seeds, out, algorithms, verbose);
    if (*validate_cmd) {
      const auto cfg = stcomp::load_scenario(scenario);
      stcomp::validate(cfg);
      std::cout << stcomp::to_json(cfg) << "\n";
      return kOk;
    }
    if (*oracle_cmd) return oracle(check);
  } catch (const stcomp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case stcomp::ErrorCode::ValidationError:
      case stcomp::ErrorCode::ParseError: return kValidation;
      case stcomp::ErrorCode::AssertionFailed: return kAssertion;
      default: return kRuntime;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kOk;
}
