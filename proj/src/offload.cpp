#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

#include "stcomp/errors.hpp"
#include "stcomp/optimizer.hpp"
#include "stcomp/solvers/lp.hpp"

namespace stcomp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// t * (2^(d/(B t)) - 1) / a : transmit energy for transmit time t.
double tx_energy(double t, double d, double B, double a) {
  return t * std::expm1(d / (B * t) * std::log(2.0)) / a;
}

double power_for_time(double t, double d, double B, double a) { return std::expm1(d / (B * t) * std::log(2.0)) / a; }

double link_slope(const NetworkInstance& inst, const Plan& plan, int k, int j, double noise) {
  const auto& ch = inst.node_channels(j);
  const CVec& w = plan.receiver(k, j);
  const double gain = std::norm(w.dot(ch[k]));
  return gain / (interference(k, ch, w, plan.p, inst.node_order(j)) + noise);
}

struct Layout {
  int K, L, G;  // G = M + N
  int N;
  int gue(int k, int j) const { return k * G + j; }
  int sue(int l, int n) const { return K * G + l * N + n; }
  int size() const { return K * G + L * N; }
};

Layout layout_of(const NetworkInstance& inst) { return {inst.K, inst.L, inst.M + inst.N, inst.N}; }

LinearProgram build_lp(const NetworkInstance& inst, const ScenarioConfig& cfg, const OffloadCosts& c) {
  const Layout lay = layout_of(inst);
  const int K = inst.K, L = inst.L, M = inst.M, N = inst.N, G = lay.G;
  const int nv = lay.size();
  LinearProgram lp;
  lp.c = Vec::Zero(nv);
  lp.lb = Vec::Zero(nv);
  lp.ub = Vec::Ones(nv);
  for (int k = 0; k < K; ++k)
    for (int j = 0; j < G; ++j) {
      const double E = c.gue_E(k, j);
      if (std::isfinite(E)) lp.c(lay.gue(k, j)) = cfg.rho_g * E;
      else lp.ub(lay.gue(k, j)) = 0.0;
    }
  for (int l = 0; l < L; ++l)
    for (int n = 0; n < N; ++n) {
      const double E = c.sue_E(l, n);
      if (std::isfinite(E)) lp.c(lay.sue(l, n)) = cfg.rho_s * E;
      else lp.ub(lay.sue(l, n)) = 0.0;
    }

  lp.A_eq = Mat::Zero(K + L, nv);
  lp.b_eq = Vec::Ones(K + L);
  for (int k = 0; k < K; ++k)
    for (int j = 0; j < G; ++j) lp.A_eq(k, lay.gue(k, j)) = 1.0;
  for (int l = 0; l < L; ++l)
    for (int n = 0; n < N; ++n) lp.A_eq(K + l, lay.sue(l, n)) = 1.0;

  // Delay rows per user, then capacity rows per node; scaled to O(1).
  const int rows = K + L + M + N;
  lp.A_ub = Mat::Zero(rows, nv);
  lp.b_ub = Vec::Ones(rows);
  for (int k = 0; k < K; ++k)
    for (int j = 0; j < G; ++j)
      if (std::isfinite(c.gue_E(k, j))) lp.A_ub(k, lay.gue(k, j)) = c.gue_T(k, j) / cfg.z_g;
  for (int l = 0; l < L; ++l)
    for (int n = 0; n < N; ++n)
      if (std::isfinite(c.sue_E(l, n))) lp.A_ub(K + l, lay.sue(l, n)) = c.sue_T(l, n) / cfg.z_s;
  for (int m = 0; m < M; ++m)
    for (int k = 0; k < K; ++k)
      if (std::isfinite(c.gue_E(k, m))) lp.A_ub(K + L + m, lay.gue(k, m)) = c.gue_f(k, m) / cfg.f_gro;
  for (int n = 0; n < N; ++n) {
    const int row = K + L + M + n;
    for (int k = 0; k < K; ++k)
      if (std::isfinite(c.gue_E(k, M + n))) lp.A_ub(row, lay.gue(k, M + n)) = c.gue_f(k, M + n) / cfg.f_sat;
    for (int l = 0; l < L; ++l)
      if (std::isfinite(c.sue_E(l, n))) lp.A_ub(row, lay.sue(l, n)) = c.sue_f(l, n) / cfg.f_sat;
  }
  return lp;
}

RelaxedDecision unpack(const NetworkInstance& inst, const SolverReport& rep) {
  const Layout lay = layout_of(inst);
  RelaxedDecision out;
  out.alpha = Table(inst.K, inst.M);
  out.beta = Table(inst.K, inst.N);
  out.gamma = Table(inst.L, inst.N);
  out.status = rep.status;
  out.objective = rep.objective;
  if (rep.status != SolverStatus::Optimal) return out;
  for (int k = 0; k < inst.K; ++k)
    for (int j = 0; j < lay.G; ++j) {
      const double x = std::clamp(rep.x(lay.gue(k, j)), 0.0, 1.0);
      if (j < inst.M) out.alpha(k, j) = x;
      else out.beta(k, j - inst.M) = x;
    }
  for (int l = 0; l < inst.L; ++l)
    for (int n = 0; n < inst.N; ++n) out.gamma(l, n) = std::clamp(rep.x(lay.sue(l, n)), 0.0, 1.0);
  return out;
}

OffloadCosts empty_costs(const NetworkInstance& inst) {
  const int G = inst.M + inst.N;
  OffloadCosts c;
  c.gue_E = Table(inst.K, G, kInf);
  c.gue_T = Table(inst.K, G, kInf);
  c.gue_f = Table(inst.K, G);
  c.gue_fmin = Table(inst.K, G, kInf);
  c.gue_p = Table(inst.K, G);
  c.sue_E = Table(inst.L, inst.N, kInf);
  c.sue_T = Table(inst.L, inst.N, kInf);
  c.sue_f = Table(inst.L, inst.N);
  c.sue_fmin = Table(inst.L, inst.N, kInf);
  c.sue_qp = Table(inst.L, inst.N);
  return c;
}

}  // namespace

PathResponse path_best_response(double slope, const TaskSpec& task, double bandwidth, double budget, double tau,
                                double capacity, double power_max, double p_fixed, double f_fixed) {
  PathResponse r;
  const double d = task.d, dc = task.cycles(), B = bandwidth;
  if (!(slope > 0.0) || !(budget > 0.0)) return r;
  const bool p_free = std::isnan(p_fixed), f_free = std::isnan(f_fixed);

  auto finish = [&](double t, double f, double p) {
    r.t_tx = t;
    r.f = f;
    r.power = p;
    r.T = t + dc / f;
    r.E = p * t + tau * dc * f * f;
    r.feasible = f > 0.0 && f <= capacity * (1.0 + 1e-12) && p <= power_max * (1.0 + 1e-12) &&
                 r.T <= budget * (1.0 + 1e-12);
    return r;
  };

  if (!p_free) {
    if (!(p_fixed > 0.0)) return r;
    const double t = d / (B * std::log2(1.0 + p_fixed * slope));
    if (!f_free) return finish(t, f_fixed, p_fixed);
    if (t >= budget) return r;
    return finish(t, dc / (budget - t), p_fixed);
  }
  const double t_lo = d / (B * std::log2(1.0 + power_max * slope));
  if (!f_free) {
    if (!(f_fixed > 0.0)) return r;
    const double t = budget - dc / f_fixed;
    if (t < t_lo * (1.0 - 1e-12)) return r;
    return finish(t, f_fixed, std::min(power_for_time(t, d, B, slope), power_max));
  }
  const double t_hi = budget - dc / capacity;
  if (t_lo > t_hi) return r;
  auto energy = [&](double t) {
    const double f = dc / (budget - t);
    return tx_energy(t, d, B, slope) + tau * dc * f * f;
  };
  const auto best = boost::math::tools::brent_find_minima(energy, t_lo, t_hi, 45);
  const double t = best.first;
  return finish(t, std::min(dc / (budget - t), capacity), std::min(power_for_time(t, d, B, slope), power_max));
}

OffloadCosts literal_offload_costs(const NetworkInstance& inst, const ScenarioConfig& cfg, const Plan& plan) {
  OffloadCosts c = empty_costs(inst);
  for (int k = 0; k < inst.K; ++k)
    for (int j = 0; j < inst.gue_nodes(); ++j) {
      const GueNode node = gue_node(inst, cfg, j);
      const double a = link_slope(inst, plan, k, j, node.noise);
      const double f = plan.gue_f(k, j);
      const double p = plan.p(k);
      if (!(a > 0.0) || !(f > 0.0) || !(p > 0.0)) continue;
      const TaskSpec& task = inst.gue_tasks[k];
      const double rate = node.bandwidth * std::log2(1.0 + p * a);
      const PathCost pc = node.satellite
                              ? cost_gue_sat(task, rate, f, node.tau, p, inst.geo.dist_gue_sat(k, node.index) * 1e3,
                                             cfg.light_speed)
                              : cost_gue_bs(task, rate, f, node.tau, p);
      c.gue_E(k, j) = pc.E;
      c.gue_T(k, j) = pc.T;
      c.gue_f(k, j) = f;
      c.gue_p(k, j) = p;
      const double t = task.d / rate;
      const double slack = cfg.z_g - gue_prop_delay(inst, cfg, k, j) - t;
      c.gue_fmin(k, j) = slack > 0.0 ? task.cycles() / slack : kInf;
    }
  for (int l = 0; l < inst.L; ++l)
    for (int n = 0; n < inst.N; ++n) {
      const double a = inst.fso_slope(l, n);
      const double f = plan.f_sat_s(l, n);
      const double q = plan.q(l);
      if (!(a > 0.0) || !(f > 0.0) || !(q > 0.0)) continue;
      const TaskSpec& task = inst.sue_tasks[l];
      const double rate = cfg.B3 * std::log2(1.0 + q * a);
      const PathCost pc =
          cost_sue_sat(task, rate, f, cfg.tau_sat, q, inst.geo.dist_sue_sat(l, n) * 1e3, cfg.light_speed);
      c.sue_E(l, n) = pc.E;
      c.sue_T(l, n) = pc.T;
      c.sue_f(l, n) = f;
      c.sue_qp(l, n) = q;
      const double slack = cfg.z_s - sue_prop_delay(inst, cfg, l, n) - task.d / rate;
      c.sue_fmin(l, n) = slack > 0.0 ? task.cycles() / slack : kInf;
    }
  return c;
}

OffloadCosts best_response_costs(const NetworkInstance& inst, const ScenarioConfig& cfg, const Plan& plan,
                                 const CostOptions& opt) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  OffloadCosts c = empty_costs(inst);
  for (int k = 0; k < inst.K; ++k) {
    const TaskSpec& task = inst.gue_tasks[k];
    const int chosen = plan.gue_choice(k);
    for (int j = 0; j < inst.gue_nodes(); ++j) {
      const GueNode node = gue_node(inst, cfg, j);
      const double a = link_slope(inst, plan, k, j, node.noise);
      const double budget = cfg.z_g - gue_prop_delay(inst, cfg, k, j);
      const double p_fix = opt.fixed_power ? plan.p(k) : nan;
      const double f_fix = opt.fixed_compute ? plan.gue_f(k, j) : nan;
      PathResponse r;
      if (opt.keep_selected && j == chosen) r = path_best_response(a, task, node.bandwidth, budget, node.tau,
                                                                   node.capacity, cfg.p_max, plan.p(k), plan.gue_f(k, j));
      if (!r.feasible)
        r = path_best_response(a, task, node.bandwidth, budget, node.tau, node.capacity, cfg.p_max, p_fix, f_fix);
      if (!r.feasible) continue;
      c.gue_E(k, j) = r.E;
      c.gue_T(k, j) = r.T + (cfg.z_g - budget);
      c.gue_f(k, j) = r.f;
      c.gue_p(k, j) = r.power;
      const double p_top = opt.fixed_power ? plan.p(k) : cfg.p_max;
      const double t_lo = task.d / (node.bandwidth * std::log2(1.0 + p_top * a));
      c.gue_fmin(k, j) = opt.fixed_compute ? r.f : task.cycles() / (budget - t_lo);
    }
  }
  for (int l = 0; l < inst.L; ++l) {
    const TaskSpec& task = inst.sue_tasks[l];
    const int chosen = plan.sue_choice(l);
    for (int n = 0; n < inst.N; ++n) {
      const double a = inst.fso_slope(l, n);
      const double budget = cfg.z_s - sue_prop_delay(inst, cfg, l, n);
      const double q_fix = opt.fixed_power ? plan.q(l) : nan;
      const double f_fix = opt.fixed_compute ? plan.f_sat_s(l, n) : nan;
      PathResponse r;
      if (opt.keep_selected && n == chosen)
        r = path_best_response(a, task, cfg.B3, budget, cfg.tau_sat, cfg.f_sat, cfg.q_max, plan.q(l),
                               plan.f_sat_s(l, n));
      if (!r.feasible) r = path_best_response(a, task, cfg.B3, budget, cfg.tau_sat, cfg.f_sat, cfg.q_max, q_fix, f_fix);
      if (!r.feasible) continue;
      c.sue_E(l, n) = r.E;
      c.sue_T(l, n) = r.T + (cfg.z_s - budget);
      c.sue_f(l, n) = r.f;
      c.sue_qp(l, n) = r.power;
      const double q_top = opt.fixed_power ? plan.q(l) : cfg.q_max;
      const double t_lo = task.d / (cfg.B3 * std::log2(1.0 + q_top * a));
      c.sue_fmin(l, n) = opt.fixed_compute ? r.f : task.cycles() / (budget - t_lo);
    }
  }
  return c;
}

RelaxedDecision solve_offload_relaxed(const NetworkInstance& inst, const ScenarioConfig& cfg,
                                      const OffloadCosts& costs) {
  return unpack(inst, solve_lp(build_lp(inst, cfg, costs)));
}

RelaxedDecision solve_offload_relaxed(const NetworkInstance& inst, const ScenarioConfig& cfg, const Plan& fixed) {
  return solve_offload_relaxed(inst, cfg, literal_offload_costs(inst, cfg, fixed));
}

Decision map_to_binary(const RelaxedDecision& relaxed) {
  const int K = relaxed.alpha.rows(), M = relaxed.alpha.cols(), N = relaxed.beta.cols();
  const int L = relaxed.gamma.rows();
  Decision d;
  d.gue.assign(K, 0);
  d.sue.assign(L, 0);
  for (int k = 0; k < K; ++k) {
    double best = -1.0;
    for (int j = 0; j < M + N; ++j) {
      const double x = j < M ? relaxed.alpha(k, j) : relaxed.beta(k, j - M);
      if (x > best) {
        best = x;
        d.gue[k] = j;
      }
    }
  }
  for (int l = 0; l < L; ++l) {
    double best = -1.0;
    for (int n = 0; n < N; ++n)
      if (relaxed.gamma(l, n) > best) {
        best = relaxed.gamma(l, n);
        d.sue[l] = n;
      }
  }
  return d;
}

double decision_cost(const Decision& d, const OffloadCosts& costs, const ScenarioConfig& cfg) {
  double s = 0.0;
  for (size_t k = 0; k < d.gue.size(); ++k) s += cfg.rho_g * costs.gue_E(k, d.gue[k]);
  for (size_t l = 0; l < d.sue.size(); ++l) s += cfg.rho_s * costs.sue_E(l, d.sue[l]);
  return s;
}

namespace {

// Load per node in the GUE numbering (satellites also carry SUE load).
std::vector<double> node_loads(const Decision& d, const OffloadCosts& c, int M, int N, bool use_minimum) {
  std::vector<double> load(M + N, 0.0);
  for (size_t k = 0; k < d.gue.size(); ++k)
    load[d.gue[k]] += use_minimum ? c.gue_fmin(k, d.gue[k]) : c.gue_f(k, d.gue[k]);
  for (size_t l = 0; l < d.sue.size(); ++l)
    load[M + d.sue[l]] += use_minimum ? c.sue_fmin(l, d.sue[l]) : c.sue_f(l, d.sue[l]);
  return load;
}

double node_capacity(const ScenarioConfig& cfg, int M, int j) { return j < M ? cfg.f_gro : cfg.f_sat; }

}  // namespace

bool capacity_ok(const Decision& d, const OffloadCosts& costs, const NetworkInstance& inst, const ScenarioConfig& cfg,
                 bool use_minimum) {
  const auto load = node_loads(d, costs, inst.M, inst.N, use_minimum);
  for (int j = 0; j < inst.M + inst.N; ++j)
    if (load[j] > node_capacity(cfg, inst.M, j) * (1.0 + 1e-12)) return false;
  return true;
}

Decision repair_capacity(const Decision& decision, const RelaxedDecision& relaxed, const OffloadCosts& costs,
                         const NetworkInstance& inst, const ScenarioConfig& cfg) {
  const int M = inst.M, N = inst.N;
  Decision d = decision;
  const int max_moves = (inst.K + inst.L) * (M + N) + 1;
  for (int move = 0; move < max_moves; ++move) {
    auto load = node_loads(d, costs, M, N, true);
    int over = -1;
    for (int j = 0; j < M + N && over < 0; ++j)
      if (load[j] > node_capacity(cfg, M, j) * (1.0 + 1e-12)) over = j;
    if (over < 0) return d;

    // Users on the overloaded node, smallest relaxed fraction first.
    struct Cand {
      bool sue;
      int idx;
      double frac;
    };
    std::vector<Cand> users;
    for (int k = 0; k < inst.K; ++k)
      if (d.gue[k] == over)
        users.push_back({false, k, over < M ? relaxed.alpha(k, over) : relaxed.beta(k, over - M)});
    if (over >= M)
      for (int l = 0; l < inst.L; ++l)
        if (d.sue[l] == over - M) users.push_back({true, l, relaxed.gamma(l, over - M)});
    std::stable_sort(users.begin(), users.end(), [](const Cand& a, const Cand& b) { return a.frac < b.frac; });

    bool moved = false;
    for (const Cand& u : users) {
      int best = -1;
      double best_E = kInf;
      if (!u.sue) {
        for (int j = 0; j < M + N; ++j) {
          if (j == over || !std::isfinite(costs.gue_E(u.idx, j))) continue;
          if (load[j] + costs.gue_fmin(u.idx, j) > node_capacity(cfg, M, j)) continue;
          if (costs.gue_E(u.idx, j) < best_E) {
            best_E = costs.gue_E(u.idx, j);
            best = j;
          }
        }
        if (best >= 0) d.gue[u.idx] = best;
      } else {
        for (int n = 0; n < N; ++n) {
          if (M + n == over || !std::isfinite(costs.sue_E(u.idx, n))) continue;
          if (load[M + n] + costs.sue_fmin(u.idx, n) > cfg.f_sat) continue;
          if (costs.sue_E(u.idx, n) < best_E) {
            best_E = costs.sue_E(u.idx, n);
            best = n;
          }
        }
        if (best >= 0) d.sue[u.idx] = best;
      }
      if (best >= 0) {
        moved = true;
        break;
      }
    }
    if (!moved) {
      std::ostringstream msg;
      msg << "node " << over << " over capacity and no user can move";
      throw Error(ErrorCode::IrreparableCapacity, msg.str());
    }
  }
  throw Error(ErrorCode::IrreparableCapacity, "capacity repair did not terminate");
}

BnbResult bnb_offload(const NetworkInstance& inst, const ScenarioConfig& cfg, const OffloadCosts& costs,
                      int budget) {
  const Layout lay = layout_of(inst);
  if (lay.size() > 64) throw Error(ErrorCode::BudgetExceeded, "instance too large for branch and bound");
  const LinearProgram root = build_lp(inst, cfg, costs);

  struct Node {
    double bound;
    Vec lb, ub;
    bool operator<(const Node& o) const { return bound > o.bound; }
  };
  auto to_decision = [&](const Vec& x) {
    Decision d;
    d.gue.assign(inst.K, 0);
    d.sue.assign(inst.L, 0);
    for (int k = 0; k < inst.K; ++k)
      for (int j = 0; j < lay.G; ++j)
        if (x(lay.gue(k, j)) > 0.5) d.gue[k] = j;
    for (int l = 0; l < inst.L; ++l)
      for (int n = 0; n < inst.N; ++n)
        if (x(lay.sue(l, n)) > 0.5) d.sue[l] = n;
    return d;
  };

  BnbResult best;
  best.objective = kInf;
  std::priority_queue<Node> open;
  auto solve_node = [&](const Vec& lb, const Vec& ub) {
    LinearProgram lp = root;
    lp.lb = lb;
    lp.ub = ub;
    return solve_lp(lp);
  };
  auto expand = [&](const Vec& lb, const Vec& ub) {
    ++best.nodes;
    const SolverReport rep = solve_node(lb, ub);
    if (rep.status != SolverStatus::Optimal || rep.objective >= best.objective - 1e-12) return;
    int branch = -1;
    double frac = 0.0;
    for (int i = 0; i < rep.x.size(); ++i) {
      const double f = std::min(rep.x(i), 1.0 - rep.x(i));
      if (f > 1e-7 && f > frac) {
        frac = f;
        branch = i;
      }
    }
    if (branch < 0) {
      best.objective = rep.objective;
      best.decision = to_decision(rep.x);
      return;
    }
    Vec ub0 = ub, lb1 = lb;
    ub0(branch) = 0.0;
    lb1(branch) = 1.0;
    open.push({rep.objective, lb1, ub});
    open.push({rep.objective, lb, ub0});
  };

  expand(root.lb, root.ub);
  while (!open.empty()) {
    if (best.nodes >= budget) throw Error(ErrorCode::BudgetExceeded, "branch and bound node budget exhausted");
    Node node = open.top();
    open.pop();
    if (node.bound >= best.objective - 1e-12) continue;
    expand(node.lb, node.ub);
  }
  if (!std::isfinite(best.objective)) throw Error(ErrorCode::Infeasible, "no binary offloading decision is feasible");
  return best;
}

Plan apply_decision(const Plan& plan, const Decision& d) {
  Plan out = plan;
  for (size_t k = 0; k < d.gue.size(); ++k) out.select_gue(static_cast<int>(k), d.gue[k]);
  for (size_t l = 0; l < d.sue.size(); ++l) out.select_sue(static_cast<int>(l), d.sue[l]);
  return out;
}

Decision decision_of(const Plan& plan) {
  Decision d;
  for (int k = 0; k < plan.alpha.rows(); ++k) d.gue.push_back(plan.gue_choice(k));
  for (int l = 0; l < plan.gamma.rows(); ++l) d.sue.push_back(plan.sue_choice(l));
  return d;
}

}  // namespace stcomp
