#include "stcomp/solvers/smooth.hpp"

#include <cmath>
#include <algorithm>
#include <limits>

#include "stcomp/errors.hpp"

namespace stcomp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Mat hessian_of(const SmoothFunction& f, const Vec& x, const Vec& lb, const Vec& ub) {
  if (f.hessian) return f.hessian(x);
  const Eigen::Index n = x.size();
  Mat H(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double h = 1e-6 * std::max(1.0, std::abs(x(j)));
    if (std::isfinite(lb(j))) h = std::min(h, 0.5 * (x(j) - lb(j)));
    if (std::isfinite(ub(j))) h = std::min(h, 0.5 * (ub(j) - x(j)));
    Vec xp = x, xm = x;
    xp(j) += h;
    xm(j) -= h;
    H.col(j) = (f.gradient(xp) - f.gradient(xm)) / (2.0 * h);
  }
  return 0.5 * (H + H.transpose());
}

class Barrier {
 public:
  Barrier(const SmoothConvexProgram& p, double stop_below) : p_(p), stop_below_(stop_below) {}

  int degree() const {
    int m = static_cast<int>(p_.constraints.size());
    for (Eigen::Index j = 0; j < p_.lb.size(); ++j) m += (std::isfinite(p_.lb(j)) ? 1 : 0) + (std::isfinite(p_.ub(j)) ? 1 : 0);
    return m;
  }

  bool inside(const Vec& x) const {
    for (Eigen::Index j = 0; j < x.size(); ++j)
      if (!(x(j) > p_.lb(j) && x(j) < p_.ub(j))) return false;
    for (const auto& g : p_.constraints)
      if (!(g.value(x) < 0.0)) return false;
    return true;
  }

  double value(const Vec& x, double t) const {
    if (!inside(x)) return kInf;
    double v = t * p_.objective.value(x);
    for (const auto& g : p_.constraints) v -= std::log(-g.value(x));
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      if (std::isfinite(p_.lb(j))) v -= std::log(x(j) - p_.lb(j));
      if (std::isfinite(p_.ub(j))) v -= std::log(p_.ub(j) - x(j));
    }
    return std::isfinite(v) ? v : kInf;
  }

  void derivatives(const Vec& x, double t, Vec& grad, Mat& hess) const {
    const Eigen::Index n = x.size();
    grad = t * p_.objective.gradient(x);
    hess = t * hessian_of(p_.objective, x, p_.lb, p_.ub);
    for (const auto& g : p_.constraints) {
      const double gv = g.value(x);
      const Vec gg = g.gradient(x);
      grad -= gg / gv;
      hess += gg * gg.transpose() / (gv * gv) - hessian_of(g, x, p_.lb, p_.ub) / gv;
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::isfinite(p_.lb(j))) {
        const double d = x(j) - p_.lb(j);
        grad(j) -= 1.0 / d;
        hess(j, j) += 1.0 / (d * d);
      }
      if (std::isfinite(p_.ub(j))) {
        const double d = p_.ub(j) - x(j);
        grad(j) += 1.0 / d;
        hess(j, j) += 1.0 / (d * d);
      }
    }
  }

  // Returns false when max_iter ran out. Stops early once the objective
  // drops below stop_below_ (used by phase I).
  bool centre(Vec& x, double t, int& iter, int max_iter) const {
    while (true) {
      if (p_.objective.value(x) < stop_below_) return true;
      if (iter >= max_iter) return false;
      Vec grad;
      Mat hess;
      derivatives(x, t, grad, hess);
      Eigen::LDLT<Mat> ldlt(hess);
      Vec dx = ldlt.solve(-grad);
      if (ldlt.info() != Eigen::Success || !dx.allFinite() || grad.dot(dx) >= 0.0) {
        const double reg = 1e-12 * std::max(1.0, hess.diagonal().cwiseAbs().maxCoeff());
        dx = (hess + reg * Mat::Identity(hess.rows(), hess.cols())).ldlt().solve(-grad);
      }
      ++iter;
      const double dec = -grad.dot(dx);
      const double f0 = value(x, t);
      // Decrements below the resolution of the barrier value cannot be resolved by the line search.
      if (!(dec / 2.0 > 1e-11 * std::max(1.0, std::abs(f0)))) return true;
      double s = 1.0;
      while (s > 1e-16) {
        const Vec xn = x + s * dx;
        if (value(xn, t) <= f0 - 0.01 * s * dec) {
          x = xn;
          break;
        }
        s *= 0.5;
      }
      if (s <= 1e-16) return true;
    }
  }

 private:
  const SmoothConvexProgram& p_;
  double stop_below_;
};

Vec interior_guess(const SmoothConvexProgram& p) {
  Vec x = p.x0.size() == p.n ? p.x0 : Vec::Zero(p.n);
  for (int j = 0; j < p.n; ++j) {
    const double lo = p.lb(j), hi = p.ub(j);
    if (std::isfinite(lo) && std::isfinite(hi)) {
      const double margin = 1e-3 * (hi - lo);
      if (!(x(j) > lo + margin && x(j) < hi - margin)) x(j) = p.x0.size() == p.n ? std::clamp(x(j), lo + margin, hi - margin) : 0.5 * (lo + hi);
    } else if (std::isfinite(lo)) {
      if (!(x(j) > lo)) x(j) = lo + 1.0;
    } else if (std::isfinite(hi)) {
      if (!(x(j) < hi)) x(j) = hi - 1.0;
    }
  }
  return x;
}

SmoothSolution barrier_solve(const SmoothConvexProgram& p, Vec x, double tol, int max_iter, int& iter,
                             double stop_below) {
  SmoothSolution out;
  Barrier bar(p, stop_below);
  const int m = std::max(1, bar.degree());
  const double f0 = p.objective.value(x);
  double t = m / std::max(std::abs(f0), 1e-12);
  bool ok = true;
  while (true) {
    ok = bar.centre(x, t, iter, max_iter);
    const double fx = p.objective.value(x);
    out.objective_trace.push_back(fx);
    if (!ok || fx < stop_below) break;
    if (m / t <= tol * std::max(std::abs(fx), 1e-12)) break;
    t *= 10.0;
  }
  out.report.status = ok ? SolverStatus::Optimal : SolverStatus::MaxIter;
  out.report.x = x;
  out.report.objective = p.objective.value(x);
  out.report.gap = m / t;
  out.report.iterations = iter;

  // Duals implied by the barrier and the resulting stationarity residual.
  Vec r = p.objective.gradient(x);
  out.constraint_duals = Vec::Zero(static_cast<Eigen::Index>(p.constraints.size()));
  double worst = 0.0;
  for (size_t i = 0; i < p.constraints.size(); ++i) {
    const double gv = p.constraints[i].value(x);
    worst = std::max(worst, gv);
    const double lam = -1.0 / (t * gv);
    out.constraint_duals(static_cast<Eigen::Index>(i)) = lam;
    r += lam * p.constraints[i].gradient(x);
  }
  for (int j = 0; j < p.n; ++j) {
    if (std::isfinite(p.lb(j))) r(j) -= 1.0 / (t * (x(j) - p.lb(j)));
    if (std::isfinite(p.ub(j))) r(j) += 1.0 / (t * (p.ub(j) - x(j)));
  }
  out.report.dual_residual = r.norm();
  out.report.primal_residual = worst;
  return out;
}

}  // namespace

SmoothSolution solve_smooth(const SmoothConvexProgram& scp, double tol, int max_iter) {
  SmoothConvexProgram p = scp;
  if (p.lb.size() == 0) p.lb = Vec::Constant(p.n, -kInf);
  if (p.ub.size() == 0) p.ub = Vec::Constant(p.n, kInf);
  if (p.lb.size() != p.n || p.ub.size() != p.n) throw Error(ErrorCode::ShapeMismatch, "bounds have wrong length");
  for (int j = 0; j < p.n; ++j)
    if (!(p.lb(j) < p.ub(j))) throw Error(ErrorCode::InfeasibleBox, "variable " + std::to_string(j) + " has empty interior");

  int iter = 0;
  Vec x = interior_guess(p);
  Barrier probe(p, -kInf);
  if (!probe.inside(x)) {
    // Phase I: minimise s subject to g_i(x) <= s over the box.
    double smax = -kInf;
    for (const auto& g : p.constraints) smax = std::max(smax, g.value(x));
    SmoothConvexProgram ph;
    ph.n = p.n + 1;
    ph.lb = Vec(ph.n);
    ph.ub = Vec(ph.n);
    ph.lb << p.lb, -kInf;
    ph.ub << p.ub, kInf;
    const int n = p.n;
    ph.objective.value = [n](const Vec& z) { return z(n); };
    ph.objective.gradient = [n](const Vec& z) {
      Vec g = Vec::Zero(z.size());
      g(n) = 1.0;
      return g;
    };
    ph.objective.hessian = [](const Vec& z) { return Mat::Zero(z.size(), z.size()).eval(); };
    for (const auto& g : p.constraints) {
      SmoothFunction h;
      h.value = [g, n](const Vec& z) { return g.value(z.head(n)) - z(n); };
      h.gradient = [g, n](const Vec& z) {
        Vec out(z.size());
        out.head(n) = g.gradient(z.head(n));
        out(n) = -1.0;
        return out;
      };
      h.hessian = [g, n, lb = p.lb, ub = p.ub](const Vec& z) {
        Mat H = Mat::Zero(z.size(), z.size());
        H.topLeftCorner(n, n) = hessian_of(g, z.head(n), lb, ub);
        return H;
      };
      ph.constraints.push_back(std::move(h));
    }
    Vec z(ph.n);
    z << x, smax + 1.0;
    const double margin = 1e-9 * std::max(1.0, std::abs(smax));
    SmoothSolution s1 = barrier_solve(ph, z, tol, max_iter, iter, -margin);
    if (!(s1.report.x(n) < 0.0)) {
      SmoothSolution out;
      out.report.status = s1.report.status == SolverStatus::MaxIter ? SolverStatus::MaxIter : SolverStatus::Infeasible;
      out.report.x = s1.report.x.head(n);
      out.report.iterations = iter;
      out.report.primal_residual = s1.report.x(n);
      return out;
    }
    x = s1.report.x.head(n);
  }
  return barrier_solve(p, x, tol, max_iter, iter, -kInf);
}

}  // namespace stcomp
