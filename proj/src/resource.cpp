#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <sstream>

#include "stcomp/errors.hpp"
#include "stcomp/optimizer.hpp"
#include "stcomp/solvers/smooth.hpp"

namespace stcomp {
namespace {

const double kLn2 = std::log(2.0);

// Transmit-energy shape u (2^(1/u) - 1) and its derivatives.
double shape(double u) { return u * std::expm1(kLn2 / u); }
double shape_d1(double u) {
  const double e = std::exp(kLn2 / u);
  return e - 1.0 - kLn2 / u * e;
}
double shape_d2(double u) { return kLn2 * kLn2 * std::exp(kLn2 / u) / (u * u * u); }

struct LinkGain {
  double gain = 0.0;  // |w^H h_k|^2
  double I = 0.0;     // interference at the current powers
  double noise = 0.0;
  double slope() const { return gain / (I + noise); }
};

LinkGain gue_link(const NetworkInstance& inst, const ScenarioConfig& cfg, const Plan& plan, const Vec& p, int k,
                  int j) {
  const auto& ch = inst.node_channels(j);
  const CVec& w = plan.receiver(k, j);
  LinkGain g;
  g.gain = std::norm(w.dot(ch[k]));
  g.I = interference(k, ch, w, p, inst.node_order(j));
  g.noise = gue_node(inst, cfg, j).noise;
  return g;
}

}  // namespace

double q_tilde_from_q(double q, double slope) { return 1.0 / std::log2(1.0 + q * slope); }
double q_from_q_tilde(double q_tilde, double slope) { return std::expm1(kLn2 / q_tilde) / slope; }

Vec gue_power_closed_form(const NetworkInstance& inst, const ScenarioConfig& cfg, const Plan& plan, int sweeps) {
  const int K = inst.K;
  std::vector<int> node(K), users(K);
  std::vector<double> budget(K);
  for (int k = 0; k < K; ++k) {
    node[k] = plan.gue_choice(k);
    if (node[k] < 0) throw Error(ErrorCode::ValidationError, "GUE " + std::to_string(k) + " has no selected node");
    const double f = plan.gue_f(k, node[k]);
    budget[k] = cfg.z_g - gue_prop_delay(inst, cfg, k, node[k]) - (f > 0.0 ? inst.gue_tasks[k].cycles() / f : 1e300);
    if (!(budget[k] > 0.0))
      throw Error(ErrorCode::NegativeDelayBudget, "GUE " + std::to_string(k) + " has no time left to transmit");
  }
  // Users decoded last see the least interference; update them first.
  std::iota(users.begin(), users.end(), 0);
  std::stable_sort(users.begin(), users.end(), [&](int a, int b) {
    return inst.node_order(node[a]).rank[a] > inst.node_order(node[b]).rank[b];
  });

  Vec p = plan.p;
  const int limit = sweeps > 0 ? sweeps : 1000;
  for (int s = 0; s < limit; ++s) {
    double change = 0.0;
    for (int k : users) {
      const GueNode nd = gue_node(inst, cfg, node[k]);
      const LinkGain g = gue_link(inst, cfg, plan, p, k, node[k]);
      const double need = std::expm1(inst.gue_tasks[k].d / (nd.bandwidth * budget[k]) * kLn2) / g.slope();
      const double next = std::clamp(need, 0.0, cfg.p_max);
      change = std::max(change, std::abs(next - p(k)) / std::max(next, 1e-300));
      p(k) = next;
    }
    if (sweeps == 0 && change < 1e-13) break;
  }
  return p;
}

namespace {

// One entry per task; compute is optimised in GHz for conditioning.
constexpr double kGiga = 1e9;

struct Task {
  bool sue;
  int idx;
  int node;  // GUE numbering; satellites shared with SUEs
  double d, dc, B, slope, budget, tau, rho;
  double u_min, u_now, f_now, capacity;
  int iu = -1, jf = -1;  // variable indices
};

struct Built {
  SmoothConvexProgram scp;
  std::shared_ptr<const std::vector<Task>> tasks;
};

Built build(const NetworkInstance& inst, const ScenarioConfig& cfg, const Plan& plan, const ResourceOptions& opt) {
  auto owned = std::make_shared<std::vector<Task>>();
  std::vector<Task>& tasks = *owned;
  int nv = 0;
  for (int k = 0; k < inst.K; ++k) {
    const int j = plan.gue_choice(k);
    if (j < 0) throw Error(ErrorCode::ValidationError, "GUE " + std::to_string(k) + " has no selected node");
    const GueNode nd = gue_node(inst, cfg, j);
    const LinkGain g = gue_link(inst, cfg, plan, plan.p, k, j);
    Task t{false, k, j, inst.gue_tasks[k].d, inst.gue_tasks[k].cycles(), nd.bandwidth, g.slope(),
           cfg.z_g - gue_prop_delay(inst, cfg, k, j), nd.tau, cfg.rho_g, 0, 0, plan.gue_f(k, j), nd.capacity};
    t.u_min = q_tilde_from_q(cfg.p_max, t.slope);
    t.u_now = q_tilde_from_q(plan.p(k), t.slope);
    if (opt.gue_power_free) t.iu = nv++;
    if (opt.compute_free) t.jf = nv++;
    tasks.push_back(t);
  }
  for (int l = 0; l < inst.L; ++l) {
    const int n = plan.sue_choice(l);
    if (n < 0) throw Error(ErrorCode::ValidationError, "SUE " + std::to_string(l) + " has no selected node");
    Task t{true, l, inst.M + n, inst.sue_tasks[l].d, inst.sue_tasks[l].cycles(), cfg.B3, inst.fso_slope(l, n),
           cfg.z_s - sue_prop_delay(inst, cfg, l, n), cfg.tau_sat, cfg.rho_s, 0, 0, plan.f_sat_s(l, n), cfg.f_sat};
    t.u_min = q_tilde_from_q(cfg.q_max, t.slope);
    t.u_now = q_tilde_from_q(plan.q(l), t.slope);
    if (opt.sue_power_free) t.iu = nv++;
    if (opt.compute_free) t.jf = nv++;
    tasks.push_back(t);
  }

  Built out;
  out.tasks = owned;
  SmoothConvexProgram& scp = out.scp;
  scp.n = nv;
  scp.lb = Vec::Zero(nv);
  scp.ub = Vec::Constant(nv, std::numeric_limits<double>::infinity());
  scp.x0 = Vec::Zero(nv);
  for (const Task& t : tasks) {
    if (t.iu >= 0) {
      scp.lb(t.iu) = t.u_min;
      scp.x0(t.iu) = std::max(t.u_now, t.u_min * (1.0 + 1e-6));
    }
    if (t.jf >= 0) {
      scp.ub(t.jf) = t.capacity / kGiga;
      scp.x0(t.jf) = std::clamp(t.f_now / kGiga, 1e-6 * t.capacity / kGiga, t.capacity / kGiga * (1.0 - 1e-9));
    }
  }

  auto u_of = [](const Task& t, const Vec& x) { return t.iu >= 0 ? x(t.iu) : t.u_now; };
  auto f_of = [](const Task& t, const Vec& x) { return t.jf >= 0 ? x(t.jf) : t.f_now / kGiga; };

  scp.objective.value = [owned, u_of, f_of](const Vec& x) {
    double s = 0.0;
    for (const Task& t : *owned) {
      const double f = f_of(t, x) * kGiga;
      s += t.rho * (t.d / (t.B * t.slope) * shape(u_of(t, x)) + t.tau * t.dc * f * f);
    }
    return s;
  };
  scp.objective.gradient = [owned, nv](const Vec& x) {
    Vec g = Vec::Zero(nv);
    for (const Task& t : *owned) {
      if (t.iu >= 0) g(t.iu) = t.rho * t.d / (t.B * t.slope) * shape_d1(x(t.iu));
      if (t.jf >= 0) g(t.jf) = t.rho * 2.0 * t.tau * t.dc * x(t.jf) * kGiga * kGiga;
    }
    return g;
  };
  scp.objective.hessian = [owned, nv](const Vec& x) {
    Mat H = Mat::Zero(nv, nv);
    for (const Task& t : *owned) {
      if (t.iu >= 0) H(t.iu, t.iu) = t.rho * t.d / (t.B * t.slope) * shape_d2(x(t.iu));
      if (t.jf >= 0) H(t.jf, t.jf) = t.rho * 2.0 * t.tau * t.dc * kGiga * kGiga;
    }
    return H;
  };

  // Delay rows, scaled by the budget.
  for (const Task& tk : tasks) {
    if (tk.iu < 0 && tk.jf < 0) continue;
    const Task* t = &tk;  // owned by the shared vector captured below
    SmoothFunction c;
    c.value = [owned, t, u_of, f_of](const Vec& x) {
      return (u_of(*t, x) * t->d / t->B + t->dc / (f_of(*t, x) * kGiga)) / t->budget - 1.0;
    };
    c.gradient = [owned, t, nv](const Vec& x) {
      Vec g = Vec::Zero(nv);
      if (t->iu >= 0) g(t->iu) = t->d / t->B / t->budget;
      if (t->jf >= 0) g(t->jf) = -t->dc / (kGiga * x(t->jf) * x(t->jf)) / t->budget;
      return g;
    };
    c.hessian = [owned, t, nv](const Vec& x) {
      Mat H = Mat::Zero(nv, nv);
      if (t->jf >= 0) H(t->jf, t->jf) = 2.0 * t->dc / (kGiga * std::pow(x(t->jf), 3)) / t->budget;
      return H;
    };
    scp.constraints.push_back(std::move(c));
  }
  // Capacity rows for nodes whose load is a variable.
  if (opt.compute_free) {
    for (int j = 0; j < inst.M + inst.N; ++j) {
      std::vector<int> idx;
      for (const Task& t : tasks)
        if (t.node == j) idx.push_back(t.jf);
      if (idx.size() < 2) continue;  // a single task is already bounded by the box
      const double cap = (j < inst.M ? cfg.f_gro : cfg.f_sat) / kGiga;
      SmoothFunction c;
      c.value = [idx, cap](const Vec& x) {
        double s = 0.0;
        for (int i : idx) s += x(i);
        return s / cap - 1.0;
      };
      c.gradient = [idx, cap, nv](const Vec&) {
        Vec g = Vec::Zero(nv);
        for (int i : idx) g(i) = 1.0 / cap;
        return g;
      };
      c.hessian = [nv](const Vec&) { return Mat(Mat::Zero(nv, nv)); };
      scp.constraints.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace

SmoothConvexProgram resource_program(const NetworkInstance& inst, const ScenarioConfig& cfg, const Plan& plan,
                                     const ResourceOptions& opt) {
  return build(inst, cfg, plan, opt).scp;
}

ResourceResult resource_allocation(const NetworkInstance& inst, const ScenarioConfig& cfg, const Plan& plan,
                                   const ResourceOptions& opt, double tol) {
  const Built b = build(inst, cfg, plan, opt);
  const std::vector<Task>& tasks = *b.tasks;

  ResourceResult out;
  out.p = plan.p;
  out.q = plan.q;
  out.f_gro = plan.f_gro;
  out.f_sat_g = plan.f_sat_g;
  out.f_sat_s = plan.f_sat_s;
  out.report.status = SolverStatus::Optimal;
  if (b.scp.n == 0) return out;

  SmoothSolution sol = solve_smooth(b.scp, tol);
  out.report = sol.report;
  out.objective_trace = sol.objective_trace;
  if (sol.report.status == SolverStatus::Infeasible) {
    std::ostringstream msg;
    msg << "power and compute subproblem has no feasible point (" << tasks.size() << " tasks)";
    throw Error(ErrorCode::Infeasible, msg.str());
  }
  const Vec& x = sol.report.x;
  for (const Task& t : tasks) {
    if (t.iu >= 0) {
      const double pw = std::min(q_from_q_tilde(x(t.iu), t.slope), t.sue ? cfg.q_max : cfg.p_max);
      if (t.sue) out.q(t.idx) = pw;
      else out.p(t.idx) = pw;
    }
    if (t.jf >= 0) {
      const double f = x(t.jf) * kGiga;
      if (t.sue) out.f_sat_s(t.idx, t.node - inst.M) = f;
      else if (t.node < inst.M) out.f_gro(t.idx, t.node) = f;
      else out.f_sat_g(t.idx, t.node - inst.M) = f;
    }
  }
  return out;
}

ResourceResult sue_power_and_compute(const NetworkInstance& inst, const ScenarioConfig& cfg, const Plan& plan,
                                     double tol) {
  return resource_allocation(inst, cfg, plan, ResourceOptions{false, true, true}, tol);
}

}  // namespace stcomp
