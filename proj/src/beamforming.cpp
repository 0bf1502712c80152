#include <algorithm>
#include <cmath>

#include "stcomp/errors.hpp"
#include "stcomp/optimizer.hpp"
#include "stcomp/solvers/conic.hpp"
#include "stcomp/solvers/eigen.hpp"

namespace stcomp {
namespace {

// The semidefinite variable lives in whitened coordinates W = T W' T^H with
// T = U diag(1/sqrt(1+d)), so interference, trace and signal terms stay well
// scaled even when gains exceed the noise by many orders of magnitude.
struct WhitenedLink {
  CMat U;
  Vec d;      // interference-to-noise per eigendirection
  Vec s2;     // 1 / (1 + d)
  CVec g;     // whitened signal, S U^H h_hat
  int n = 0;

  CVec to_whitened(const CVec& w) const {
    CVec y = U.adjoint() * w;
    for (int j = 0; j < n; ++j) y(j) /= std::sqrt(s2(j));
    return y;
  }
  CVec from_whitened(const CVec& y) const {
    CVec z = y;
    for (int j = 0; j < n; ++j) z(j) *= std::sqrt(s2(j));
    return U * z;
  }
  // SINR of the original-coordinate beam T y is a plain Rayleigh quotient in y.
  double sinr(const CVec& y) const { return std::norm(g.dot(y)) / y.squaredNorm(); }
  double interference(const CVec& y) const {  // for a unit-norm original beam
    double I = 0.0, nrm = 0.0;
    for (int j = 0; j < n; ++j) {
      I += d(j) * s2(j) * std::norm(y(j));
      nrm += s2(j) * std::norm(y(j));
    }
    return I / nrm;
  }
};

WhitenedLink whiten(const std::vector<CVec>& channels, int k, const Vec& p, const SicOrder& order, double noise) {
  const Whitening wh = interference_whitening(k, channels, p, order, noise);
  WhitenedLink lk;
  lk.n = static_cast<int>(channels[k].size());
  lk.U = wh.U;
  lk.d = wh.d;
  lk.s2 = (1.0 + wh.d.array()).inverse().matrix();
  lk.g = wh.U.adjoint() * channels[k] * std::sqrt(p(k) / noise);
  for (int j = 0; j < lk.n; ++j) lk.g(j) *= std::sqrt(lk.s2(j));
  return lk;
}

double normalized_time(double sinr) { return 1.0 / std::log2(1.0 + sinr); }

}  // namespace

ScaLinkResult sca_link(const std::vector<CVec>& channels, int k, const Vec& p, const SicOrder& order, double noise,
                       double bandwidth, double d_bits, double budget, const CVec& init, int max_outer, double tol) {
  const WhitenedLink lk = whiten(channels, k, p, order, noise);
  const int n = lk.n;
  constexpr double eps = 1e-3;

  ScaLinkResult out;
  CVec y = lk.to_whitened(init.normalized());
  double cur = lk.sinr(y);
  if (!std::isfinite(cur)) throw Error(ErrorCode::ScaDiverged, "non-finite starting SINR");
  out.start_sinr = cur;
  out.objective.push_back(normalized_time(cur));
  const double a_cap = budget > 0.0 ? budget * bandwidth / d_bits : 0.0;

  for (int outer = 0; outer < max_outer; ++outer) {
    // Anchor terms for the unit-norm original beam T y / |T y|.
    const double I = lk.interference(y);
    const double nrm2 = [&] {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += lk.s2(j) * std::norm(y(j));
      return s;
    }();
    const double X_hat = std::norm(lk.g.dot(y)) / nrm2;
    const double gamma_hash = X_hat / (I + 1.0);
    if (!(gamma_hash > 0.0)) break;
    const double kappa = 1.0 / (I + 1.0);

    ConicProgram cp;
    cp.block_dims = {n};
    cp.n_scalar = 3;  // a, r, gamma
    cp.c_scalar = Vec::Zero(3);
    cp.c_scalar(0) = 1.0;

    ConicRow trace_row;
    trace_row.blocks.push_back({0, CMat(lk.s2.cast<Complex>().asDiagonal())});
    trace_row.rhs = 1.0;
    trace_row.equality = true;
    cp.rows.push_back(trace_row);

    ConicRow sinr_row;
    CMat A = CMat((kappa * (lk.d.array() * lk.s2.array())).matrix().cast<Complex>().asDiagonal());
    A -= lk.g * lk.g.adjoint() / X_hat;
    sinr_row.blocks.push_back({0, A});
    sinr_row.scalars.push_back({2, 1.0});
    sinr_row.rhs = 1.0 - kappa;
    cp.rows.push_back(sinr_row);

    const double a_now = normalized_time(cur);
    const bool with_delay = budget > 0.0 && a_now <= a_cap;
    if (with_delay) {
      ConicRow delay_row;
      delay_row.scalars.push_back({0, 1.0});
      delay_row.rhs = a_cap;
      cp.rows.push_back(delay_row);
    } else if (budget > 0.0) {
      out.delay_row_dropped = true;
    }
    cp.hyperbolic.push_back({1, 0, 1.0});
    cp.logs.push_back({1, 2, 1.0, gamma_hash});

    // Start from a blend of the anchor with the whitened identity, scaled to
    // satisfy the trace row.
    const CVec yn = y / y.norm();
    CMat W0 = (1.0 - eps) * yn * yn.adjoint() + (eps / n) * CMat::Identity(n, n);
    double tr = 0.0;
    for (int j = 0; j < n; ++j) tr += lk.s2(j) * W0(j, j).real();
    W0 /= tr;
    cp.W0 = {W0};
    const double g0 = 0.99;
    const double r0 = 0.99 * std::log2(1.0 + gamma_hash * g0);
    cp.x0 = Vec(3);
    cp.x0 << 1.0 / (0.99 * r0), r0, g0;

    const ConicSolution sol = solve_conic(cp);
    out.status = sol.report.status;
    if (sol.report.status != SolverStatus::Optimal && sol.report.status != SolverStatus::MaxIter) break;

    // Extract in S W' S, a rotation of the original-coordinate matrix, so
    // that barrier mass along strong interferers does not dominate.
    const Vec sq = lk.s2.cwiseSqrt();
    const CMat Wo = sq.cast<Complex>().asDiagonal() * sol.W[0] * sq.cast<Complex>().asDiagonal();
    const EigPair top = top_eigpair(Wo);
    const CVec y_new = top.vector.cwiseQuotient(sq.cast<Complex>());
    const double next = lk.sinr(y_new);
    if (!std::isfinite(next)) throw Error(ErrorCode::ScaDiverged, "non-finite SINR after a convex step");
    out.rank_one = std::min(out.rank_one, rank_one_ratio(Wo));
    ++out.outer;

    if (next < cur * (1.0 - 1e-12)) break;
    const double a_old = normalized_time(cur);
    y = y_new;
    cur = next;
    const double a_new = normalized_time(cur);
    out.objective.push_back(a_new);
    if (a_old - a_new <= tol * a_old) break;
  }
  out.w = lk.from_whitened(y).normalized();
  out.sinr = cur;
  return out;
}

Beamformers closed_form_receivers(const NetworkInstance& inst, const ScenarioConfig& cfg, const Vec& p) {
  Beamformers bf;
  bf.w.resize(static_cast<size_t>(inst.K) * inst.M);
  bf.v.resize(static_cast<size_t>(inst.K) * inst.N);
  for (int k = 0; k < inst.K; ++k) {
    for (int m = 0; m < inst.M; ++m)
      bf.w[static_cast<size_t>(k) * inst.M + m] = max_sinr_receiver(k, inst.h_bs[m], p, inst.order_bs[m], cfg.noise1);
    for (int n = 0; n < inst.N; ++n)
      bf.v[static_cast<size_t>(k) * inst.N + n] =
          max_sinr_receiver(k, inst.g_sat[n], p, inst.order_sat[n], inst.noise_sat);
  }
  return bf;
}

Beamformers zf_receivers(const NetworkInstance& inst, bool* any_infeasible) {
  Beamformers bf;
  bf.w.resize(static_cast<size_t>(inst.K) * inst.M);
  bf.v.resize(static_cast<size_t>(inst.K) * inst.N);
  bool flag = false;
  for (int k = 0; k < inst.K; ++k) {
    for (int m = 0; m < inst.M; ++m) {
      ZfResult z = zf_receiver(k, inst.h_bs[m], inst.order_bs[m]);
      flag = flag || z.zf_infeasible;
      bf.w[static_cast<size_t>(k) * inst.M + m] = std::move(z.w);
    }
    for (int n = 0; n < inst.N; ++n) {
      ZfResult z = zf_receiver(k, inst.g_sat[n], inst.order_sat[n]);
      flag = flag || z.zf_infeasible;
      bf.v[static_cast<size_t>(k) * inst.N + n] = std::move(z.w);
    }
  }
  if (any_infeasible) *any_infeasible = flag;
  return bf;
}

ScaResult sca_beamforming(const NetworkInstance& inst, const ScenarioConfig& cfg, const Plan& plan, ScaInit init,
                          int max_outer, double tol) {
  ScaResult out;
  out.bf = closed_form_receivers(inst, cfg, plan.p);
  for (int k = 0; k < inst.K; ++k) {
    const int j = plan.gue_choice(k);
    if (j < 0) continue;
    const GueNode node = gue_node(inst, cfg, j);
    const TaskSpec& task = inst.gue_tasks[k];
    const double f = plan.gue_f(k, j);
    const double budget =
        f > 0.0 ? cfg.z_g - gue_prop_delay(inst, cfg, k, j) - task.cycles() / f : 0.0;
    const auto& ch = inst.node_channels(j);
    CVec& slot = j < inst.M ? out.bf.w[static_cast<size_t>(k) * inst.M + j]
                            : out.bf.v[static_cast<size_t>(k) * inst.N + (j - inst.M)];
    const CVec x0 = init == ScaInit::MaxSinr ? slot : CVec(ch[k].normalized());
    ScaLinkResult r = sca_link(ch, k, plan.p, inst.node_order(j), node.noise, node.bandwidth, task.d,
                               budget > 0.0 ? budget : 0.0, x0, max_outer, tol);
    slot = r.w;
    out.total_outer += r.outer;
    out.min_rank_one = std::min(out.min_rank_one, r.rank_one);
    out.links.push_back(std::move(r));
  }
  return out;
}

}  // namespace stcomp
