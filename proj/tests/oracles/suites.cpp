#include <algorithm>
#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "stcomp/baselines.hpp"
#include "stcomp/channel.hpp"
#include "stcomp/errors.hpp"
#include "stcomp/rng.hpp"

namespace stcomp::oracle {
namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

Check make(std::string name, bool passed, std::string detail) { return {std::move(name), passed, std::move(detail)}; }

}  // namespace

bool SuiteReport::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

SuiteReport bessel_suite() {
  SuiteReport rep;
  double worst = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double x = 0.05 * i;
    for (int n : {1, 3}) worst = std::max(worst, std::abs(bessel_j(n, x) - bessel_series(n, x)));
  }
  rep.stats["max_abs_error"] = worst;
  rep.checks.push_back(make("J1 and J3 against the power series on [0, 10]", worst < 1e-12, "max |err| " + fmt(worst)));

  const double eps3 = 0.4 * kPi / 180.0, b_max = 25.118864315095795;
  Vec zero = Vec::Zero(1);
  const double g0 = beam_gain(zero, eps3, b_max)(0);
  rep.checks.push_back(make("boresight gain equals the peak", std::abs(g0 - b_max) <= 1e-9 * b_max, "gain " + fmt(g0)));

  // The small-argument branch must join the Bessel expression smoothly.
  double jump = 0.0;
  for (double u : {0.9e-3, 1.0e-3, 1.1e-3}) {
    Vec e(1);
    e(0) = std::asin(u * std::sin(eps3) / 2.07123);
    const double g = beam_gain(e, eps3, b_max)(0);
    const double j1 = bessel_series(1, u), j3 = bessel_series(3, u);
    const double ref = b_max * std::pow(j1 / (2.0 * u) + 36.0 * j3 / (u * u * u), 3);
    jump = std::max(jump, std::abs(g - ref) / ref);
  }
  rep.stats["branch_rel_error"] = jump;
  rep.checks.push_back(make("gain continuous across the small-angle branch", jump < 1e-8, "rel err " + fmt(jump)));
  return rep;
}

SuiteReport power_suite(int cases, std::uint64_t seed, int grid_points) {
  SuiteReport rep;
  Rng rng = make_rng(seed, {tag("power")});
  std::uniform_int_distribution<int> small(1, 2);
  std::uniform_real_distribution<double> expo(-4.0, -0.05);
  int bad = 0, clamped = 0, interior = 0;
  double worst_gap = 0.0;
  for (int c = 0; c < cases; ++c) {
    ScenarioConfig cfg;
    cfg.K = 1;
    cfg.L = 0;
    cfg.M = small(rng);
    cfg.N = small(rng);
    const NetworkInstance inst = sample_instance(cfg, derive_seed(seed, {tag("pinst"), static_cast<std::uint64_t>(c)}));
    const int j = std::uniform_int_distribution<int>(0, inst.gue_nodes() - 1)(rng);
    const double window = cfg.z_g - gue_prop_delay(inst, cfg, 0, j);
    const double budget = window * std::pow(10.0, expo(rng));
    const TaskSpec& task = inst.gue_tasks[0];

    Plan plan = initial_plan(inst, cfg);
    plan.select_gue(0, j);
    plan.set_gue_f(0, j, task.cycles() / (window - budget));
    const double p_cf = gue_power_closed_form(inst, cfg, plan)(0);

    const GueNode nd = gue_node(inst, cfg, j);
    const CVec& w = plan.receiver(0, j);
    const double slope = std::norm(w.dot(inst.node_channels(j)[0])) / nd.noise;
    const GridPower g = grid_min_power(slope, task.d, nd.bandwidth, budget, cfg.p_max, grid_points);
    bool ok;
    if (g.feasible) {
      ++interior;
      ok = p_cf <= g.p * (1.0 + 1e-9) && p_cf >= g.p - g.step * (1.0 + 1e-9);
      worst_gap = std::max(worst_gap, (g.p - p_cf) / g.step);
    } else {
      ++clamped;
      ok = p_cf == cfg.p_max;
    }
    if (!ok) ++bad;
  }
  rep.stats["cases"] = cases;
  rep.stats["interior"] = interior;
  rep.stats["clamped"] = clamped;
  rep.stats["max_gap_steps"] = worst_gap;
  rep.checks.push_back(make("closed form within one grid step of the grid minimum", bad == 0,
                            std::to_string(bad) + " of " + std::to_string(cases) + " outside"));
  rep.checks.push_back(make("both clamped and interior cases exercised", clamped > 0 && interior > 0,
                            std::to_string(interior) + " interior, " + std::to_string(clamped) + " clamped"));
  return rep;
}

SuiteReport beamforming_suite(int instances, std::uint64_t seed) {
  SuiteReport rep;
  const ScenarioConfig cfg;
  double worst_oracle = 0.0, worst_receiver = 0.0, min_r1 = 1.0;
  int terminations = 0, links = 0;
  for (int i = 0; i < instances; ++i) {
    const std::uint64_t s = derive_seed(seed, {tag("bfinst"), static_cast<std::uint64_t>(i)});
    const NetworkInstance inst = sample_instance(cfg, s);
    const Plan plan = apply_decision(initial_plan(inst, cfg), random_decision(inst, cfg, s));
    const ScaResult res = sca_beamforming(inst, cfg, plan, ScaInit::MatchedFilter, cfg.sca_max_outer, cfg.sca_tol);
    for (const auto& link : res.links) {
      min_r1 = std::min(min_r1, link.rank_one);
      ++terminations;
    }
    for (int k = 0; k < inst.K; ++k) {
      const int j = plan.gue_choice(k);
      const auto& ch = inst.node_channels(j);
      const auto& order = inst.node_order(j);
      const double noise = gue_node(inst, cfg, j).noise;
      Plan probe = plan;
      probe.bf = res.bf;
      const double achieved = sinr(k, ch, probe.receiver(k, j), plan.p, order, noise);
      const double ref = max_sinr_value(k, ch, plan.p, order, noise);
      const double closed = sinr(k, ch, max_sinr_receiver(k, ch, plan.p, order, noise), plan.p, order, noise);
      worst_oracle = std::max(worst_oracle, std::abs(achieved - ref) / ref);
      worst_receiver = std::max(worst_receiver, std::abs(achieved - closed) / closed);
      ++links;
    }
  }
  rep.stats["links"] = links;
  rep.stats["terminations"] = terminations;
  rep.stats["min_rank_one"] = min_r1;
  rep.stats["max_rel_error_oracle"] = worst_oracle;
  rep.stats["max_rel_error_receiver"] = worst_receiver;
  rep.checks.push_back(make("SINR matches the long-double optimum", worst_oracle <= 1e-3, "max rel err " + fmt(worst_oracle)));
  rep.checks.push_back(
      make("SINR matches the closed-form receiver", worst_receiver <= 1e-3, "max rel err " + fmt(worst_receiver)));
  return rep;
}

SuiteReport offload_suite(int instances, std::uint64_t seed) {
  SuiteReport rep;
  Rng rng = make_rng(seed, {tag("offload")});
  std::uniform_int_distribution<int> k_dist(1, 3), small(1, 2);
  std::uniform_real_distribution<double> fg(0.5e9, 3e9), fs(0.5e9, 2e9);
  int lp_bad = 0, bnb_bad = 0, close = 0, redraws = 0, done = 0;
  double worst_bnb = 0.0, worst_map = 0.0;
  long long enumerated = 0;
  std::uint64_t draw = 0;
  while (done < instances) {
    if (redraws > 20 * instances) break;
    ScenarioConfig cfg;
    cfg.K = k_dist(rng);
    cfg.L = small(rng);
    cfg.M = small(rng);
    cfg.N = small(rng);
    cfg.f_gro = fg(rng);
    cfg.f_sat = fs(rng);
    const NetworkInstance inst = sample_instance(cfg, derive_seed(seed, {tag("oinst"), draw++}));
    CostOptions co;
    co.keep_selected = false;
    const OffloadCosts costs = best_response_costs(inst, cfg, initial_plan(inst, cfg), co);
    const Exhaustive ex = exhaustive_offload(inst, cfg, costs);
    enumerated += ex.enumerated;
    if (!ex.feasible) {
      ++redraws;
      continue;
    }
    ++done;
    const double scale = std::max(1e-12, ex.objective);
    const RelaxedDecision relaxed = solve_offload_relaxed(inst, cfg, costs);
    if (relaxed.status != SolverStatus::Optimal || relaxed.objective > ex.objective + 1e-9 * scale) ++lp_bad;

    double bnb_obj = std::numeric_limits<double>::infinity();
    try {
      bnb_obj = bnb_offload(inst, cfg, costs).objective;
    } catch (const Error&) {
    }
    const double gap = std::abs(bnb_obj - ex.objective) / scale;
    worst_bnb = std::max(worst_bnb, std::isfinite(gap) ? gap : 1e300);
    if (!(gap <= 1e-9)) ++bnb_bad;

    try {
      const Decision d = repair_capacity(map_to_binary(relaxed), relaxed, costs, inst, cfg);
      const double v = decision_cost(d, costs, cfg);
      const double rel = (v - bnb_obj) / std::max(1e-12, bnb_obj);
      if (std::isfinite(v)) worst_map = std::max(worst_map, rel);
      if (std::isfinite(v) && rel <= 0.10) ++close;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::IrreparableCapacity) throw;
    }
  }
  rep.stats["instances"] = done;
  rep.stats["redraws"] = redraws;
  rep.stats["enumerated"] = static_cast<double>(enumerated);
  rep.stats["max_bnb_gap"] = worst_bnb;
  rep.stats["max_mapping_gap"] = worst_map;
  rep.stats["mapping_within_10pct"] = close;
  rep.checks.push_back(make("enough feasible instances", done == instances, std::to_string(done) + " drawn"));
  rep.checks.push_back(make("relaxation bounds the enumerated optimum", lp_bad == 0, std::to_string(lp_bad) + " violations"));
  rep.checks.push_back(make("branch and bound equals enumeration", bnb_bad == 0, "max rel gap " + fmt(worst_bnb)));
  rep.checks.push_back(make("rounded decision within 10% on at least 90% of instances", close >= 0.9 * done,
                            std::to_string(close) + " of " + std::to_string(done)));
  return rep;
}

SuiteReport run_suite(const std::string& name) {
  if (name == "power") return power_suite();
  if (name == "beamforming") return beamforming_suite();
  if (name == "offload") return offload_suite();
  if (name == "bessel") return bessel_suite();
  throw Error(ErrorCode::ValidationError, "unknown oracle check '" + name + "'");
}

}  // namespace stcomp::oracle
