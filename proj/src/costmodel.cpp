#include "stcomp/costmodel.hpp"

#include <cmath>

#include "stcomp/errors.hpp"

namespace stcomp {
namespace {

void require_path(double rate, double f) {
  if (!(rate > 0.0)) throw Error(ErrorCode::ZeroRate, "selected path has zero rate");
  if (!(f > 0.0)) throw Error(ErrorCode::ZeroCompute, "selected path has zero compute");
}

}  // namespace

PathCost cost_gue_bs(const TaskSpec& task, double rate, double f, double tau, double p) {
  require_path(rate, f);
  const double t_tx = task.d / rate;
  return {t_tx + task.cycles() / f, p * t_tx + tau * task.cycles() * f * f};
}

PathCost cost_gue_sat(const TaskSpec& task, double rate, double f, double tau, double p, double phi_m,
                      double light_speed) {
  PathCost c = cost_gue_bs(task, rate, f, tau, p);
  c.T += phi_m / light_speed;
  return c;
}

PathCost cost_sue_sat(const TaskSpec& task, double rate, double f, double tau, double q, double phi_m,
                      double light_speed) {
  return cost_gue_sat(task, rate, f, tau, q, phi_m, light_speed);
}

Plan Plan::empty(int K, int L, int M, int N) {
  Plan p;
  p.alpha = Table(K, M);
  p.beta = Table(K, N);
  p.gamma = Table(L, N);
  p.bf.w.assign(static_cast<size_t>(K) * M, CVec());
  p.bf.v.assign(static_cast<size_t>(K) * N, CVec());
  p.p = Vec::Zero(K);
  p.q = Vec::Zero(L);
  p.f_gro = Table(K, M);
  p.f_sat_g = Table(K, N);
  p.f_sat_s = Table(L, N);
  return p;
}

int Plan::gue_choice(int k) const {
  for (int m = 0; m < alpha.cols(); ++m)
    if (alpha(k, m) > 0.5) return m;
  for (int n = 0; n < beta.cols(); ++n)
    if (beta(k, n) > 0.5) return alpha.cols() + n;
  return -1;
}

int Plan::sue_choice(int l) const {
  for (int n = 0; n < gamma.cols(); ++n)
    if (gamma(l, n) > 0.5) return n;
  return -1;
}

double Plan::gue_f(int k, int j) const {
  return j < alpha.cols() ? f_gro(k, j) : f_sat_g(k, j - alpha.cols());
}

void Plan::set_gue_f(int k, int j, double f) {
  if (j < alpha.cols()) f_gro(k, j) = f;
  else f_sat_g(k, j - alpha.cols()) = f;
}

const CVec& Plan::receiver(int k, int j) const {
  const int M = alpha.cols(), N = beta.cols();
  return j < M ? bf.w[static_cast<size_t>(k) * M + j] : bf.v[static_cast<size_t>(k) * N + (j - M)];
}

CVec& Plan::receiver(int k, int j) {
  const int M = alpha.cols(), N = beta.cols();
  return j < M ? bf.w[static_cast<size_t>(k) * M + j] : bf.v[static_cast<size_t>(k) * N + (j - M)];
}

void Plan::select_gue(int k, int j) {
  for (int m = 0; m < alpha.cols(); ++m) alpha(k, m) = (m == j) ? 1.0 : 0.0;
  for (int n = 0; n < beta.cols(); ++n) beta(k, n) = (alpha.cols() + n == j) ? 1.0 : 0.0;
}

void Plan::select_sue(int l, int n) {
  for (int i = 0; i < gamma.cols(); ++i) gamma(l, i) = (i == n) ? 1.0 : 0.0;
}

CostReport evaluate_plan(const NetworkInstance& inst, const Plan& plan, const ScenarioConfig& cfg) {
  const int K = inst.K, L = inst.L, M = inst.M, N = inst.N;
  CostReport rep;
  rep.T_gg = Vec::Zero(K);
  rep.T_gs = Vec::Zero(K);
  rep.E_gg = Vec::Zero(K);
  rep.E_gs = Vec::Zero(K);
  rep.T_ss = Vec::Zero(L);
  rep.E_ss = Vec::Zero(L);
  rep.I_g = Table(K, M);
  rep.I_s = Table(K, N);
  rep.I_l = Vec::Zero(L);

  for (int k = 0; k < K; ++k) {
    const TaskSpec& task = inst.gue_tasks[k];
    for (int m = 0; m < M; ++m) {
      if (plan.alpha(k, m) == 0.0) continue;
      const CVec& w = plan.receiver(k, m);
      rep.I_g(k, m) = interference(k, inst.h_bs[m], w, plan.p, inst.order_bs[m]);
      const double r = rate_gue_bs(k, inst.h_bs[m], w, plan.p, inst.order_bs[m], cfg.B1, cfg.noise1);
      const PathCost c = cost_gue_bs(task, r, plan.f_gro(k, m), cfg.tau_gro, plan.p(k));
      rep.T_gg(k) += plan.alpha(k, m) * c.T;
      rep.E_gg(k) += plan.alpha(k, m) * c.E;
    }
    for (int n = 0; n < N; ++n) {
      if (plan.beta(k, n) == 0.0) continue;
      const CVec& v = plan.receiver(k, M + n);
      rep.I_s(k, n) = interference(k, inst.g_sat[n], v, plan.p, inst.order_sat[n]);
      const double r = rate_gue_sat(k, inst.g_sat[n], v, plan.p, inst.order_sat[n], cfg.B2, inst.noise_sat);
      const PathCost c = cost_gue_sat(task, r, plan.f_sat_g(k, n), cfg.tau_sat, plan.p(k),
                                      inst.geo.dist_gue_sat(k, n) * 1e3, cfg.light_speed);
      rep.T_gs(k) += plan.beta(k, n) * c.T;
      rep.E_gs(k) += plan.beta(k, n) * c.E;
    }
  }
  for (int l = 0; l < L; ++l) {
    const TaskSpec& task = inst.sue_tasks[l];
    for (int n = 0; n < N; ++n) {
      if (plan.gamma(l, n) == 0.0) continue;
      const double I = inst.fso_slope(l, n);
      rep.I_l(l) += plan.gamma(l, n) * I;
      const double r = cfg.B3 * std::log2(1.0 + plan.q(l) * I);
      const PathCost c = cost_sue_sat(task, r, plan.f_sat_s(l, n), cfg.tau_sat, plan.q(l),
                                      inst.geo.dist_sue_sat(l, n) * 1e3, cfg.light_speed);
      rep.T_ss(l) += plan.gamma(l, n) * c.T;
      rep.E_ss(l) += plan.gamma(l, n) * c.E;
    }
  }
  rep.xi = weighted_total(rep, cfg);
  return rep;
}

double weighted_total(const CostReport& rep, const ScenarioConfig& cfg) {
  return cfg.rho_g * (rep.E_gg.sum() + rep.E_gs.sum()) + cfg.rho_s * rep.E_ss.sum();
}

std::vector<Violation> check_feasibility(const NetworkInstance& inst, const Plan& plan, const ScenarioConfig& cfg,
                                         double rel_tol) {
  const int K = inst.K, L = inst.L, M = inst.M, N = inst.N;
  std::vector<Violation> out;
  auto over = [&](const char* name, int idx, double value, double bound) {
    if (value > bound * (1.0 + rel_tol) + 1e-300) out.push_back({name, idx, value - bound});
  };

  bool structural_ok = true;
  auto binary = [&](const Table& t) {
    for (double x : t.data())
      if (x != 0.0 && x != 1.0) {
        out.push_back({"binary", 0, std::min(std::abs(x), std::abs(1.0 - x))});
        structural_ok = false;
      }
  };
  binary(plan.alpha);
  binary(plan.beta);
  binary(plan.gamma);
  for (int k = 0; k < K; ++k) {
    double s = 0.0;
    for (int m = 0; m < M; ++m) s += plan.alpha(k, m);
    for (int n = 0; n < N; ++n) s += plan.beta(k, n);
    if (s != 1.0) {
      out.push_back({"gue_assignment", k, std::abs(s - 1.0)});
      structural_ok = false;
    }
  }
  for (int l = 0; l < L; ++l) {
    double s = 0.0;
    for (int n = 0; n < N; ++n) s += plan.gamma(l, n);
    if (s != 1.0) {
      out.push_back({"sue_assignment", l, std::abs(s - 1.0)});
      structural_ok = false;
    }
  }
  for (int k = 0; k < K; ++k) {
    over("gue_power", k, plan.p(k), cfg.p_max);
    if (plan.p(k) < 0.0) out.push_back({"gue_power", k, -plan.p(k)});
  }
  for (int l = 0; l < L; ++l) {
    over("sue_power", l, plan.q(l), cfg.q_max);
    if (plan.q(l) < 0.0) out.push_back({"sue_power", l, -plan.q(l)});
  }
  for (int k = 0; k < K; ++k)
    for (int j = 0; j < M + N; ++j) {
      const double sel = j < M ? plan.alpha(k, j) : plan.beta(k, j - M);
      if (sel == 0.0) continue;
      const CVec& w = plan.receiver(k, j);
      const double nrm = w.size() ? w.squaredNorm() : 0.0;
      if (std::abs(nrm - 1.0) > 1e-9) out.push_back({"unit_norm", k, std::abs(nrm - 1.0)});
    }
  for (int m = 0; m < M; ++m) {
    double s = 0.0;
    for (int k = 0; k < K; ++k) s += plan.alpha(k, m) * plan.f_gro(k, m);
    over("bs_capacity", m, s, cfg.f_gro);
  }
  for (int n = 0; n < N; ++n) {
    double s = 0.0;
    for (int k = 0; k < K; ++k) s += plan.beta(k, n) * plan.f_sat_g(k, n);
    for (int l = 0; l < L; ++l) s += plan.gamma(l, n) * plan.f_sat_s(l, n);
    over("sat_capacity", n, s, cfg.f_sat);
  }
  if (!structural_ok) return out;

  CostReport rep;
  try {
    rep = evaluate_plan(inst, plan, cfg);
  } catch (const Error& e) {
    out.push_back({e.code() == ErrorCode::ZeroCompute ? "zero_compute" : "zero_rate", 0, 0.0});
    return out;
  }
  for (int k = 0; k < K; ++k) over("gue_delay", k, rep.T_gg(k) + rep.T_gs(k), cfg.z_g);
  for (int l = 0; l < L; ++l) over("sue_delay", l, rep.T_ss(l), cfg.z_s);
  return out;
}

}  // namespace stcomp
