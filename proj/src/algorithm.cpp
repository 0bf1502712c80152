#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "stcomp/errors.hpp"
#include "stcomp/optimizer.hpp"

namespace stcomp {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string describe(const std::vector<Violation>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i].constraint << "[" << v[i].index << "]";
  }
  return os.str();
}

struct Candidate {
  Plan plan;
  double xi = std::numeric_limits<double>::infinity();
  bool feasible = false;
  std::vector<Violation> violations;
};

Candidate assess(const NetworkInstance& inst, const ScenarioConfig& cfg, Plan plan) {
  Candidate c;
  c.violations = check_feasibility(inst, plan, cfg);
  c.feasible = c.violations.empty();
  if (c.feasible) c.xi = evaluate_plan(inst, plan, cfg).xi;
  c.plan = std::move(plan);
  return c;
}

Plan with_resources(const Plan& base, const ResourceResult& r) {
  Plan p = base;
  p.p = r.p;
  p.q = r.q;
  p.f_gro = r.f_gro;
  p.f_sat_g = r.f_sat_g;
  p.f_sat_s = r.f_sat_s;
  return p;
}

}  // namespace

Plan initial_plan(const NetworkInstance& inst, const ScenarioConfig& cfg) {
  Plan plan = Plan::empty(inst.K, inst.L, inst.M, inst.N);
  plan.p = Vec::Constant(inst.K, cfg.p_max / 2.0);
  plan.q = Vec::Constant(inst.L, cfg.q_max / 2.0);
  const double share_g = cfg.f_gro / std::max(inst.K, 1);
  const double share_s = cfg.f_sat / std::max(inst.K + inst.L, 1);
  plan.f_gro = Table(inst.K, inst.M, share_g);
  plan.f_sat_g = Table(inst.K, inst.N, share_s);
  plan.f_sat_s = Table(inst.L, inst.N, share_s);
  plan.bf = closed_form_receivers(inst, cfg, plan.p);
  return plan;
}

AlgorithmResult run_algorithm1(const NetworkInstance& inst, const ScenarioConfig& cfg, const AoOptions& opt) {
  const int max_iter = opt.max_iter >= 0 ? opt.max_iter : cfg.ao_max_iter;
  const double tol = opt.tol >= 0.0 ? opt.tol : cfg.ao_tol;

  AlgorithmResult out;
  Plan plan = initial_plan(inst, cfg);
  Beamformers zf;
  if (opt.zero_forcing) {
    zf = zf_receivers(inst, &out.zf_infeasible);
    plan.bf = zf;
  }
  const CostOptions cost_opt{opt.fixed_power, opt.fixed_compute, true};
  bool have = false;
  double xi_prev = std::numeric_limits<double>::infinity();
  std::vector<Violation> last_violations;

  for (int t = 1; t <= max_iter; ++t) {
    IterationStep st;
    st.t = t;

    // Offloading decision with the other blocks fixed.
    auto t0 = Clock::now();
    const OffloadCosts costs = best_response_costs(inst, cfg, plan, cost_opt);
    Decision dec;
    if (opt.fixed_decision) {
      dec = *opt.fixed_decision;
    } else {
      const RelaxedDecision relaxed = solve_offload_relaxed(inst, cfg, costs);
      st.offload_status = relaxed.status;
      if (relaxed.status != SolverStatus::Optimal) {
        st.accepted = false;
        out.trace.steps.push_back(st);
        if (have) break;
        throw Error(ErrorCode::ScenarioInfeasible, "offloading subproblem is infeasible");
      }
      try {
        dec = repair_capacity(map_to_binary(relaxed), relaxed, costs, inst, cfg);
      } catch (const Error& e) {
        st.accepted = false;
        out.trace.steps.push_back(st);
        if (have) break;
        throw Error(ErrorCode::ScenarioInfeasible, std::string("bs_capacity/sat_capacity: ") + e.what());
      }
    }
    Plan cand = apply_decision(plan, dec);
    for (int k = 0; k < inst.K; ++k) {
      const int j = dec.gue[k];
      if (have && plan.gue_choice(k) == j) continue;
      if (!std::isfinite(costs.gue_E(k, j))) continue;
      if (!opt.fixed_power) cand.p(k) = costs.gue_p(k, j);
      if (!opt.fixed_compute) cand.set_gue_f(k, j, costs.gue_f(k, j));
    }
    for (int l = 0; l < inst.L; ++l) {
      const int n = dec.sue[l];
      if (have && plan.sue_choice(l) == n) continue;
      if (!std::isfinite(costs.sue_E(l, n))) continue;
      if (!opt.fixed_power) cand.q(l) = costs.sue_qp(l, n);
      if (!opt.fixed_compute) cand.f_sat_s(l, n) = costs.sue_f(l, n);
    }
    st.seconds_offload = seconds_since(t0);

    // Receive beamforming.
    t0 = Clock::now();
    if (opt.zero_forcing) {
      cand.bf = zf;
    } else {
      const ScaResult sca = sca_beamforming(inst, cfg, cand, opt.sca_init, cfg.sca_max_outer, cfg.sca_tol);
      cand.bf = sca.bf;
      st.sca_outer = sca.total_outer;
      st.min_rank_one = sca.min_rank_one;
    }
    st.seconds_beam = seconds_since(t0);

    // GUE powers from the delay-tight closed form.
    t0 = Clock::now();
    bool power_ok = true;
    if (!opt.fixed_power) {
      try {
        cand.p = gue_power_closed_form(inst, cfg, cand);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NegativeDelayBudget) throw;
        power_ok = false;
      }
    }
    st.seconds_power = seconds_since(t0);

    // SUE powers and compute; the joint variant also moves GUE transmit
    // times and is kept only if it beats the fixed-power variant.
    t0 = Clock::now();
    Candidate best;
    if (power_ok) {
      auto attempt = [&](const ResourceOptions& ro, bool resweep, const char* name) {
        try {
          const ResourceResult r = resource_allocation(inst, cfg, cand, ro);
          Plan next = with_resources(cand, r);
          if (resweep) next.p = gue_power_closed_form(inst, cfg, next);
          Candidate c = assess(inst, cfg, std::move(next));
          if (!c.feasible && best.violations.empty()) best.violations = c.violations;
          if (c.feasible && c.xi < best.xi) {
            best = std::move(c);
            st.resource_status = r.report.status;
            st.resource_variant = name;
          }
        } catch (const Error& e) {
          if (e.code() != ErrorCode::Infeasible && e.code() != ErrorCode::NegativeDelayBudget) throw;
        }
      };
      attempt(ResourceOptions{false, !opt.fixed_power, !opt.fixed_compute}, false, "fixed_gue_power");
      if (!opt.fixed_power && !opt.fixed_compute) attempt(ResourceOptions{true, true, true}, true, "joint");
    }
    st.seconds_resource = seconds_since(t0);

    const bool improves = best.feasible && (!have || best.xi <= xi_prev * (1.0 + 1e-12));
    if (!improves) {
      st.accepted = false;
      st.xi = best.xi;
      out.trace.steps.push_back(st);
      if (!have) {
        last_violations = best.violations;
        std::string why = power_ok ? describe(last_violations) : "gue_delay (no transmit time left)";
        if (why.empty()) why = "no feasible resource allocation";
        throw Error(ErrorCode::ScenarioInfeasible, "first iteration infeasible: " + why);
      }
      out.trace.converged = true;
      break;
    }
    plan = std::move(best.plan);
    st.xi = best.xi;
    out.trace.steps.push_back(st);
    out.trace.xi.push_back(best.xi);
    if (have && xi_prev - best.xi <= tol * xi_prev) {
      out.trace.converged = true;
      break;
    }
    xi_prev = best.xi;
    have = true;
  }
  out.plan = std::move(plan);
  out.cost = evaluate_plan(inst, out.plan, cfg);
  return out;
}

}  // namespace stcomp
