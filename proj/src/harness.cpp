#include "stcomp/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <tuple>

#include "stcomp/baselines.hpp"
#include "stcomp/errors.hpp"
#include "stcomp/rng.hpp"

namespace stcomp {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ValidationError, "cannot write " + path.string());
  out << text;
}

}  // namespace

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Proposed: return "proposed";
    case Algorithm::FTP: return "ftp";
    case Algorithm::ZFBF: return "zfbf";
    case Algorithm::RO: return "ro";
    case Algorithm::ACR: return "acr";
    case Algorithm::HCO: return "hco";
  }
  return "unknown";
}

Algorithm parse_algorithm(const std::string& s) {
  const std::string t = lower(s);
  if (t == "alg1") return Algorithm::Proposed;
  for (Algorithm a : all_algorithms())
    if (t == to_string(a)) return a;
  throw Error(ErrorCode::ValidationError, "algorithms: unknown algorithm '" + s + "'");
}

std::vector<Algorithm> all_algorithms() {
  return {Algorithm::Proposed, Algorithm::FTP, Algorithm::ZFBF, Algorithm::RO, Algorithm::ACR, Algorithm::HCO};
}

ExperimentSpec default_experiment(const std::string& id) {
  ExperimentSpec s;
  s.id = id;
  s.algorithms = {Algorithm::Proposed};
  if (id == "convergence") {
    s.keep_traces = true;
  } else if (id == "baseline_compare") {
    s.series = {{"z", {"z_g", "z_s"}, {0.06, 0.08, 0.10, 0.12, 0.14}, false}};
    s.algorithms = all_algorithms();
  } else if (id == "users_sweep") {
    s.series = {{"K", {"K"}, {4, 6, 8, 10, 12}, false}, {"L", {"L"}, {4, 6, 8, 10, 12}, false}};
  } else if (id == "bandwidth_antenna_sweep") {
    s.series = {{"bandwidth_scale", {"B1", "B2", "B3"}, {0.5, 0.75, 1.0, 1.25, 1.5}, true},
                {"nt", {"nt_g", "nt_s"}, {8, 16, 24, 32}, false}};
  } else if (id == "node_sweep") {
    s.series = {{"M", {"M"}, {1, 2, 3, 4}, false}, {"N", {"N"}, {1, 2, 3, 4}, false}};
  } else if (id == "datasize_capacity_sweep") {
    s.series = {{"data_scale", {"gue_d_min", "gue_d_max", "sue_d_min", "sue_d_max"}, {0.6, 0.8, 1.0, 1.2, 1.4}, true},
                {"f_gro_scale", {"f_gro"}, {0.5, 1.0, 1.5, 2.0}, true},
                {"f_sat_scale", {"f_sat"}, {0.5, 1.0, 1.5, 2.0}, true}};
  } else if (id != "custom") {
    throw Error(ErrorCode::ValidationError, "experiment: unknown id '" + id + "'");
  }
  return s;
}

std::uint64_t instance_seed(std::uint64_t master, int trial) {
  return derive_seed(master, {tag("trial"), static_cast<std::uint64_t>(trial)});
}

std::uint64_t algorithm_seed(std::uint64_t master, int point, int trial, Algorithm a) {
  return derive_seed(master, {tag("algo"), static_cast<std::uint64_t>(point), static_cast<std::uint64_t>(trial),
                              static_cast<std::uint64_t>(a)});
}

ResultRow run_row(const NetworkInstance& inst, const ScenarioConfig& cfg, Algorithm a, std::uint64_t algo_seed) {
  ResultRow row;
  row.algorithm = a;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    AlgorithmResult r;
    switch (a) {
      case Algorithm::Proposed: r = run_algorithm1(inst, cfg); break;
      case Algorithm::FTP: r = run_ftp(inst, cfg); break;
      case Algorithm::ZFBF: r = run_zfbf(inst, cfg); break;
      case Algorithm::RO: r = run_ro(inst, cfg, algo_seed); break;
      case Algorithm::ACR: r = run_acr(inst, cfg); break;
      case Algorithm::HCO: r = run_hco(inst, cfg, algo_seed).result; break;
    }
    row.xi = r.cost.xi;
    row.feasible = check_feasibility(inst, r.plan, cfg).empty();
    row.iterations = static_cast<int>(r.trace.xi.size());
    if (!row.feasible) row.note = "ScenarioInfeasible";
    else if (r.zf_infeasible) row.note = "ZfInfeasible";
    row.trace = std::move(r.trace);
  } catch (const Error& e) {
    // Only modelling infeasibility is recorded; anything else is a bug.
    if (e.code() != ErrorCode::ScenarioInfeasible && e.code() != ErrorCode::Infeasible &&
        e.code() != ErrorCode::IrreparableCapacity && e.code() != ErrorCode::NegativeDelayBudget)
      throw;
    row.feasible = false;
    row.xi = std::nan("");
    row.note = std::string(to_string(e.code()));
  }
  row.wallclock = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
  if (rows.empty()) throw Error(ErrorCode::EmptyInput, "no rows to summarize");
  using Key = std::tuple<std::string, int, std::string, double>;
  std::map<Key, std::vector<const ResultRow*>> groups;
  std::vector<Key> order;
  for (const auto& r : rows) {
    Key k{r.experiment, static_cast<int>(r.algorithm), r.series, r.x};
    auto [it, fresh] = groups.try_emplace(k);
    if (fresh) order.push_back(k);
    it->second.push_back(&r);
  }
  std::vector<SummaryRow> out;
  for (const Key& k : order) {
    SummaryRow s;
    s.experiment = std::get<0>(k);
    s.algorithm = static_cast<Algorithm>(std::get<1>(k));
    s.series = std::get<2>(k);
    s.x = std::get<3>(k);
    double sum = 0.0;
    for (const ResultRow* r : groups[k]) {
      if (r->feasible) {
        sum += r->xi;
        ++s.n;
      } else {
        ++s.n_infeasible;
      }
    }
    if (s.n > 0) {
      s.mean = sum / s.n;
      double ss = 0.0;
      for (const ResultRow* r : groups[k])
        if (r->feasible) ss += (r->xi - s.mean) * (r->xi - s.mean);
      s.std = s.n > 1 ? std::sqrt(ss / (s.n - 1)) : 0.0;
    } else {
      s.mean = std::nan("");
    }
    out.push_back(s);
  }
  return out;
}

std::string rows_csv(const std::vector<ResultRow>& rows) {
  std::string out = "experiment,algorithm,series,x,point,trial,seed,xi_joules,feasible,iterations,note\n";
  for (const auto& r : rows) {
    out += r.experiment + "," + std::string(to_string(r.algorithm)) + "," + r.series + "," + num(r.x) + "," +
           std::to_string(r.point) + "," + std::to_string(r.trial) + "," + std::to_string(r.seed) + "," +
           (r.feasible ? num(r.xi) : std::string("nan")) + "," + (r.feasible ? "1" : "0") + "," +
           std::to_string(r.iterations) + "," + r.note + "\n";
  }
  return out;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out = "experiment,algorithm,series,x,mean_xi_joules,std_xi_joules,n,n_infeasible\n";
  for (const auto& s : rows)
    out += s.experiment + "," + std::string(to_string(s.algorithm)) + "," + s.series + "," + num(s.x) + "," +
           num(s.mean) + "," + num(s.std) + "," + std::to_string(s.n) + "," + std::to_string(s.n_infeasible) + "\n";
  return out;
}

std::string trace_csv(const IterationTrace& trace) {
  std::string out = "iteration,xi_joules,accepted,offload_status,sca_outer,min_rank_one,resource_status,resource_variant\n";
  for (const auto& st : trace.steps)
    out += std::to_string(st.t) + "," + num(st.xi) + "," + (st.accepted ? "1" : "0") + "," +
           std::string(to_string(st.offload_status)) + "," + std::to_string(st.sca_outer) + "," +
           num(st.min_rank_one) + "," + std::string(to_string(st.resource_status)) + "," + st.resource_variant + "\n";
  return out;
}

ExperimentOutput run_experiment(const ExperimentSpec& spec, const ScenarioConfig& cfg, const std::string& out_dir,
                                bool verbose) {
  if (spec.trials < 1) throw Error(ErrorCode::ValidationError, "trials: must be >= 1");
  if (spec.algorithms.empty()) throw Error(ErrorCode::ValidationError, "algorithms: empty");
  validate(cfg);

  struct Point {
    std::string series;
    double x;
    ScenarioConfig cfg;
  };
  std::vector<Point> points;
  if (spec.series.empty()) {
    points.push_back({"", 0.0, cfg});
  } else {
    for (const auto& ax : spec.series) {
      if (ax.values.empty() || ax.keys.empty())
        throw Error(ErrorCode::ValidationError, "series " + ax.name + ": empty sweep");
      for (double v : ax.values) {
        ScenarioConfig c = cfg;
        for (const auto& key : ax.keys) set_field(c, key, ax.scale ? get_field(cfg, key) * v : v);
        validate(c);
        points.push_back({ax.name, v, c});
      }
    }
  }

  ExperimentOutput out;
  for (size_t pi = 0; pi < points.size(); ++pi) {
    const Point& pt = points[pi];
    for (int trial = 0; trial < spec.trials; ++trial) {
      const std::uint64_t seed = instance_seed(cfg.seed, trial);
      const NetworkInstance inst = sample_instance(pt.cfg, seed);
      for (Algorithm a : spec.algorithms) {
        ResultRow row = run_row(inst, pt.cfg, a, algorithm_seed(cfg.seed, static_cast<int>(pi), trial, a));
        row.experiment = spec.id;
        row.series = pt.series;
        row.x = pt.x;
        row.point = static_cast<int>(pi);
        row.trial = trial;
        row.seed = seed;
        if (!spec.keep_traces) row.trace = IterationTrace{};
        if (verbose)
          std::cerr << spec.id << " " << pt.series << "=" << pt.x << " trial " << trial << " " << to_string(a)
                    << " xi=" << row.xi << (row.feasible ? "" : " infeasible") << " (" << row.wallclock << " s)\n";
        out.rows.push_back(std::move(row));
      }
    }
  }
  out.summary = summarize(out.rows);

  if (!out_dir.empty()) {
    namespace fs = std::filesystem;
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    write_file(dir / (spec.id + ".csv"), rows_csv(out.rows));
    write_file(dir / (spec.id + "_summary.csv"), summary_csv(out.summary));
    std::string timing = "point,trial,algorithm,wallclock_s\n";
    for (const auto& r : out.rows)
      timing += std::to_string(r.point) + "," + std::to_string(r.trial) + "," + std::string(to_string(r.algorithm)) +
                "," + num(r.wallclock) + "\n";
    write_file(dir / (spec.id + "_timing.csv"), timing);
    if (spec.keep_traces) {
      fs::create_directories(dir / "traces");
      for (const auto& r : out.rows)
        write_file(dir / "traces" /
                       (spec.id + "_" + std::string(to_string(r.algorithm)) + "_p" + std::to_string(r.point) +
                        "_trial" + std::to_string(r.trial) + ".csv"),
                   trace_csv(r.trace));
    }
  }
  return out;
}

}  // namespace stcomp
