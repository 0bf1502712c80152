#include "stcomp/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "stcomp/errors.hpp"
#include "stcomp/rng.hpp"

namespace stcomp {
namespace {

std::string violation_list(const std::vector<Violation>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x.constraint + "[" + std::to_string(x.index) + "]";
  return s;
}

AlgorithmResult finish(const NetworkInstance& inst, const ScenarioConfig& cfg, Plan plan) {
  const auto v = check_feasibility(inst, plan, cfg);
  if (!v.empty()) throw Error(ErrorCode::ScenarioInfeasible, "random plan violates " + violation_list(v));
  AlgorithmResult out;
  out.cost = evaluate_plan(inst, plan, cfg);
  out.plan = std::move(plan);
  out.trace.xi.push_back(out.cost.xi);
  out.trace.converged = true;
  return out;
}

AlgorithmResult random_plan(const NetworkInstance& inst, const ScenarioConfig& cfg, const Decision& d, Rng& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  Plan plan = apply_decision(initial_plan(inst, cfg), d);
  for (int k = 0; k < inst.K; ++k) plan.p(k) = cfg.p_max * (1.0 - u01(rng));
  for (int l = 0; l < inst.L; ++l) plan.q(l) = cfg.q_max * (1.0 - u01(rng));
  // Random shares of each node's capacity among the users placed there.
  std::vector<double> weight_g(inst.K), weight_s(inst.L), total(inst.M + inst.N, 0.0);
  for (int k = 0; k < inst.K; ++k) total[d.gue[k]] += weight_g[k] = 1.0 - u01(rng);
  for (int l = 0; l < inst.L; ++l) total[inst.M + d.sue[l]] += weight_s[l] = 1.0 - u01(rng);
  for (int k = 0; k < inst.K; ++k) {
    const int j = d.gue[k];
    plan.set_gue_f(k, j, (j < inst.M ? cfg.f_gro : cfg.f_sat) * weight_g[k] / total[j]);
  }
  for (int l = 0; l < inst.L; ++l) plan.f_sat_s(l, d.sue[l]) = cfg.f_sat * weight_s[l] / total[inst.M + d.sue[l]];
  plan.bf = closed_form_receivers(inst, cfg, plan.p);
  return finish(inst, cfg, std::move(plan));
}

}  // namespace

AlgorithmResult run_ftp(const NetworkInstance& inst, const ScenarioConfig& cfg) {
  AoOptions opt;
  opt.fixed_power = true;
  return run_algorithm1(inst, cfg, opt);
}

AlgorithmResult run_zfbf(const NetworkInstance& inst, const ScenarioConfig& cfg) {
  AoOptions opt;
  opt.zero_forcing = true;
  return run_algorithm1(inst, cfg, opt);
}

AlgorithmResult run_acr(const NetworkInstance& inst, const ScenarioConfig& cfg) {
  AoOptions opt;
  opt.fixed_compute = true;
  return run_algorithm1(inst, cfg, opt);
}

Decision random_decision(const NetworkInstance& inst, const ScenarioConfig& cfg, std::uint64_t seed) {
  Rng rng = make_rng(seed, {tag("ro")});
  const OffloadCosts costs = best_response_costs(inst, cfg, initial_plan(inst, cfg), CostOptions{});
  Decision d;
  auto pick = [&](const std::vector<int>& options, int fallback) {
    if (options.empty()) return std::uniform_int_distribution<int>(0, fallback - 1)(rng);
    return options[std::uniform_int_distribution<size_t>(0, options.size() - 1)(rng)];
  };
  for (int k = 0; k < inst.K; ++k) {
    std::vector<int> ok;
    for (int j = 0; j < inst.gue_nodes(); ++j)
      if (std::isfinite(costs.gue_E(k, j))) ok.push_back(j);
    d.gue.push_back(pick(ok, inst.gue_nodes()));
  }
  for (int l = 0; l < inst.L; ++l) {
    std::vector<int> ok;
    for (int n = 0; n < inst.N; ++n)
      if (std::isfinite(costs.sue_E(l, n))) ok.push_back(n);
    d.sue.push_back(pick(ok, inst.N));
  }
  return d;
}

AlgorithmResult run_ro(const NetworkInstance& inst, const ScenarioConfig& cfg, std::uint64_t seed) {
  const Decision d = random_decision(inst, cfg, seed);
  if (cfg.ro_random_plan) {
    Rng rng = make_rng(seed, {tag("roplan")});
    return random_plan(inst, cfg, d, rng);
  }
  AoOptions opt;
  opt.fixed_decision = d;
  return run_algorithm1(inst, cfg, opt);
}

HcoResult run_hco(const NetworkInstance& inst, const ScenarioConfig& cfg, std::uint64_t seed) {
  const int G = inst.gue_nodes(), N = inst.N;
  const int dims = inst.K * G + inst.L * N;
  const Plan base = initial_plan(inst, cfg);
  HcoResult out;

  // Fitness uses per-path best-response costs at the initial plan, which do
  // not depend on the decision; cached per decision.
  const OffloadCosts costs = best_response_costs(inst, cfg, base, CostOptions{});
  std::map<std::vector<int>, double> cache;
  double penalty = std::numeric_limits<double>::infinity();
  auto score = [&](const Decision& d) {
    std::vector<int> key = d.gue;
    key.insert(key.end(), d.sue.begin(), d.sue.end());
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    ++out.evaluations;
    double v = decision_cost(d, costs, cfg);
    if (!std::isfinite(v) || !capacity_ok(d, costs, inst, cfg, true)) v = penalty;
    else if (!std::isfinite(penalty)) penalty = cfg.hco_penalty_factor * v;
    return cache.emplace(std::move(key), v).first->second;
  };

  auto encode = [&](const Decision& d) {
    Eigen::VectorXi x = Eigen::VectorXi::Zero(dims);
    for (int k = 0; k < inst.K; ++k) x(k * G + d.gue[k]) = 1;
    for (int l = 0; l < inst.L; ++l) x(inst.K * G + l * N + d.sue[l]) = 1;
    return x;
  };
  // Groups that are not one-hot collapse to their highest-velocity option.
  auto decode = [&](const Eigen::VectorXi& x, const Vec& v) {
    Decision d;
    auto group = [&](int off, int width) {
      int ones = 0, pick = 0;
      for (int i = 0; i < width; ++i)
        if (x(off + i)) {
          ++ones;
          pick = i;
        }
      if (ones != 1) {
        pick = 0;
        for (int i = 1; i < width; ++i)
          if (v(off + i) > v(off + pick)) pick = i;
      }
      return pick;
    };
    for (int k = 0; k < inst.K; ++k) d.gue.push_back(group(k * G, G));
    for (int l = 0; l < inst.L; ++l) d.sue.push_back(group(inst.K * G + l * N, N));
    return d;
  };

  Rng rng = make_rng(seed, {tag("hco")});
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  constexpr double vmax = 4.0;
  const int swarm = std::max(cfg.hco_swarm, 1);

  std::vector<Eigen::VectorXi> x(swarm), pbest(swarm);
  std::vector<Vec> v(swarm);
  std::vector<double> pbest_val(swarm);
  Eigen::VectorXi gbest;
  double gbest_val = std::numeric_limits<double>::infinity();
  Decision gbest_dec;

  for (int s = 0; s < swarm; ++s) {
    Decision d;
    if (s == 0) {
      d = random_decision(inst, cfg, seed);
    } else {
      for (int k = 0; k < inst.K; ++k) d.gue.push_back(std::uniform_int_distribution<int>(0, G - 1)(rng));
      for (int l = 0; l < inst.L; ++l) d.sue.push_back(std::uniform_int_distribution<int>(0, N - 1)(rng));
    }
    x[s] = encode(d);
    v[s] = Vec(dims);
    for (int i = 0; i < dims; ++i) v[s](i) = 2.0 * u01(rng) - 1.0;
    pbest[s] = x[s];
    pbest_val[s] = score(d);
    if (pbest_val[s] < gbest_val) {
      gbest_val = pbest_val[s];
      gbest = x[s];
      gbest_dec = d;
    }
  }
  out.best_trace.push_back(gbest_val);

  int stale = 0;
  for (int it = 0; it < cfg.hco_iters && stale < cfg.hco_patience; ++it) {
    const double before = gbest_val;
    for (int s = 0; s < swarm; ++s) {
      for (int i = 0; i < dims; ++i) {
        const double r1 = u01(rng), r2 = u01(rng);
        double vi = cfg.hco_inertia * v[s](i) + cfg.hco_c1 * r1 * (pbest[s](i) - x[s](i)) +
                    cfg.hco_c2 * r2 * (gbest(i) - x[s](i));
        vi = std::clamp(vi, -vmax, vmax);
        v[s](i) = vi;
        x[s](i) = u01(rng) < 1.0 / (1.0 + std::exp(-vi)) ? 1 : 0;
      }
      const Decision d = decode(x[s], v[s]);
      x[s] = encode(d);
      const double val = score(d);
      if (val < pbest_val[s]) {
        pbest_val[s] = val;
        pbest[s] = x[s];
      }
      if (val < gbest_val) {
        gbest_val = val;
        gbest = x[s];
        gbest_dec = d;
      }
    }
    out.best_trace.push_back(gbest_val);
    stale = gbest_val < before * (1.0 - 1e-12) ? 0 : stale + 1;
  }

  if (!std::isfinite(gbest_val) || gbest_val >= penalty)
    throw Error(ErrorCode::ScenarioInfeasible, "swarm found no feasible offloading decision");
  // Polish the best decision with the same block updates the other schemes use.
  AoOptions opt;
  opt.fixed_decision = gbest_dec;
  out.result = run_algorithm1(inst, cfg, opt);
  return out;
}

}  // namespace stcomp
