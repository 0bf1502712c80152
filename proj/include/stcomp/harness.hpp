#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "stcomp/config.hpp"
#include "stcomp/optimizer.hpp"

namespace stcomp {

enum class Algorithm { Proposed, FTP, ZFBF, RO, ACR, HCO };

std::string_view to_string(Algorithm a);
// Accepts "proposed" (alias "alg1") and the baseline tags, case-insensitive.
// Throws ValidationError.
Algorithm parse_algorithm(const std::string& s);
std::vector<Algorithm> all_algorithms();

// One swept quantity. Each value is written to every listed config key,
// either directly or as a multiplier of the key's base value.
struct SweepAxis {
  std::string name;
  std::vector<std::string> keys;
  std::vector<double> values;
  bool scale = false;
};

// Series are swept one at a time with everything else at the base config.
// An experiment without series runs a single point.
struct ExperimentSpec {
  std::string id;
  std::vector<SweepAxis> series;
  int trials = 1;
  std::vector<Algorithm> algorithms;
  bool keep_traces = false;
};

// Figure-style defaults for the named experiments; throws ValidationError.
ExperimentSpec default_experiment(const std::string& id);

struct ResultRow {
  std::string experiment;
  Algorithm algorithm = Algorithm::Proposed;
  std::string series;  // empty for single-point experiments
  double x = 0.0;      // value of the swept axis
  int point = 0;
  int trial = 0;
  std::uint64_t seed = 0;  // instance seed, shared by all algorithms of a trial
  double xi = 0.0;
  bool feasible = false;
  int iterations = 0;
  std::string note;  // error code of infeasible rows
  double wallclock = 0.0;
  IterationTrace trace;
};

// Instance seed of a trial; independent of the sweep point so that curves
// share random numbers.
std::uint64_t instance_seed(std::uint64_t master, int trial);
// Seed of the algorithm's own randomness for one row.
std::uint64_t algorithm_seed(std::uint64_t master, int point, int trial, Algorithm a);

// Runs one algorithm on one instance; infeasibility is recorded, not thrown.
ResultRow run_row(const NetworkInstance& inst, const ScenarioConfig& cfg, Algorithm a, std::uint64_t algo_seed);

struct SummaryRow {
  std::string experiment;
  Algorithm algorithm = Algorithm::Proposed;
  std::string series;
  double x = 0.0;
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation; 0 for a single row
  int n = 0;
  int n_infeasible = 0;
};

// Aggregates feasible rows per (experiment, algorithm, series, x). Throws EmptyInput.
std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows);

struct ExperimentOutput {
  std::vector<ResultRow> rows;
  std::vector<SummaryRow> summary;
};

// Writes <id>.csv, <id>_summary.csv, <id>_timing.csv and, when traces are
// kept, traces/<id>_trial<k>.csv under out_dir (created if missing). An empty
// out_dir skips persistence.
ExperimentOutput run_experiment(const ExperimentSpec& spec, const ScenarioConfig& cfg, const std::string& out_dir,
                                bool verbose = false);

std::string rows_csv(const std::vector<ResultRow>& rows);
std::string summary_csv(const std::vector<SummaryRow>& rows);
std::string trace_csv(const IterationTrace& trace);

}  // namespace stcomp
