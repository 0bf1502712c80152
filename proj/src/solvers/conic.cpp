#include "stcomp/solvers/conic.hpp"

#include <cmath>
#include <limits>
#include <tuple>

#include "stcomp/errors.hpp"

namespace stcomp {
namespace {

constexpr double kLn2 = 0.69314718055994530942;

// Re tr(A B) for Hermitian B.
double inner(const CMat& A, const CMat& B) { return A.cwiseProduct(B.conjugate()).sum().real(); }

struct Point {
  std::vector<CMat> W;
  Vec x;
  Vec y;  // slack per row; unused for equality rows
};

struct ScalarBarrier {
  double value = 0.0;
  Vec grad;
  Mat hess;
};

// Barrier of the hyperbolic and logarithmic scalar constraints. Returns false
// outside the domain.
bool scalar_barrier(const ConicProgram& cp, const Vec& x, ScalarBarrier& out, bool with_hessian) {
  const int n = cp.n_scalar;
  out.value = 0.0;
  out.grad = Vec::Zero(n);
  if (with_hessian) out.hess = Mat::Zero(n, n);
  auto add_log_term = [&](double u, const std::vector<std::pair<int, double>>& du,
                          const std::vector<std::tuple<int, int, double>>& d2u) {
    out.value -= std::log(u);
    for (auto [i, g] : du) out.grad(i) -= g / u;
    if (!with_hessian) return;
    for (auto [i, gi] : du)
      for (auto [j, gj] : du) out.hess(i, j) += gi * gj / (u * u);
    for (auto [i, j, h] : d2u) out.hess(i, j) -= h / u;
  };
  for (const auto& h : cp.hyperbolic) {
    const double xd = x(h.den), xb = x(h.bound);
    if (!(xd > 0.0)) return false;
    const double u = xb - h.num / xd;
    if (!(u > 0.0)) return false;
    add_log_term(u, {{h.bound, 1.0}, {h.den, h.num / (xd * xd)}}, {{h.den, h.den, -2.0 * h.num / (xd * xd * xd)}});
    add_log_term(xd, {{h.den, 1.0}}, {});
  }
  for (const auto& l : cp.logs) {
    const double arg = 1.0 + l.scale * x(l.arg);
    if (!(arg > 0.0)) return false;
    const double u = l.coef * std::log(arg) / kLn2 - x(l.lhs);
    if (!(u > 0.0)) return false;
    const double d1 = l.coef * l.scale / (kLn2 * arg);
    const double d2 = -l.coef * l.scale * l.scale / (kLn2 * arg * arg);
    add_log_term(u, {{l.arg, d1}, {l.lhs, -1.0}}, {{l.arg, l.arg, d2}});
    add_log_term(arg, {{l.arg, l.scale}}, {});
  }
  return std::isfinite(out.value);
}

class Engine {
 public:
  explicit Engine(const ConicProgram& cp) : cp_(cp) {
    nb_ = static_cast<int>(cp.block_dims.size());
    nr_ = static_cast<int>(cp.rows.size());
    nx_ = cp.n_scalar;
    degree_ = 2.0 * (cp.hyperbolic.size() + cp.logs.size());
    for (int d : cp.block_dims) degree_ += d;
    for (const auto& r : cp.rows) degree_ += r.equality ? 0.0 : 1.0;
  }

  double degree() const { return degree_; }

  double row_value(const Point& p, int r) const {
    const auto& row = cp_.rows[r];
    double v = 0.0;
    for (const auto& [b, A] : row.blocks) v += inner(A, p.W[b]);
    for (auto [i, a] : row.scalars) v += a * p.x(i);
    return v;
  }

  Vec primal_residual(const Point& p) const {
    Vec res(nr_);
    for (int r = 0; r < nr_; ++r) res(r) = row_value(p, r) + (cp_.rows[r].equality ? 0.0 : p.y(r)) - cp_.rows[r].rhs;
    return res;
  }

  double objective(const Point& p) const {
    double v = cp_.c_scalar.size() ? cp_.c_scalar.dot(p.x) : 0.0;
    for (int b = 0; b < static_cast<int>(cp_.c_blocks.size()); ++b)
      if (cp_.c_blocks[b].size()) v += inner(cp_.c_blocks[b], p.W[b]);
    return v;
  }

  // Full KKT residual norm at (p, nu); also validates the domain.
  bool residual_norm(const Point& p, const Vec& nu, double t, double& out) const {
    double acc = 0.0;
    for (int b = 0; b < nb_; ++b) {
      Eigen::LLT<CMat> llt(p.W[b]);
      if (llt.info() != Eigen::Success) return false;
      const CMat Winv = llt.solve(CMat::Identity(p.W[b].rows(), p.W[b].cols()));
      CMat g = -Winv;
      if (b < static_cast<int>(cp_.c_blocks.size()) && cp_.c_blocks[b].size()) g += t * cp_.c_blocks[b];
      for (int r = 0; r < nr_; ++r)
        for (const auto& [bb, A] : cp_.rows[r].blocks)
          if (bb == b) g += nu(r) * A;
      acc += g.squaredNorm();
    }
    for (int r = 0; r < nr_; ++r) {
      if (cp_.rows[r].equality) continue;
      if (!(p.y(r) > 0.0)) return false;
      acc += std::pow(nu(r) - 1.0 / p.y(r), 2);
    }
    ScalarBarrier sb;
    if (!scalar_barrier(cp_, p.x, sb, false)) return false;
    Vec gx = sb.grad;
    if (cp_.c_scalar.size()) gx += t * cp_.c_scalar;
    for (int r = 0; r < nr_; ++r)
      for (auto [i, a] : cp_.rows[r].scalars) gx(i) += nu(r) * a;
    acc += gx.squaredNorm();
    acc += primal_residual(p).squaredNorm();
    out = std::sqrt(acc);
    return std::isfinite(out);
  }

  // t * objective plus all barriers; +inf outside the domain.
  double barrier_value(const Point& p, double t) const {
    double v = t * objective(p);
    for (int b = 0; b < nb_; ++b) {
      Eigen::LLT<CMat> llt(p.W[b]);
      if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
      v -= 2.0 * llt.matrixLLT().diagonal().real().array().log().sum();
    }
    for (int r = 0; r < nr_; ++r) {
      if (cp_.rows[r].equality) continue;
      if (!(p.y(r) > 0.0)) return std::numeric_limits<double>::infinity();
      v -= std::log(p.y(r));
    }
    ScalarBarrier sb;
    if (!scalar_barrier(cp_, p.x, sb, false)) return std::numeric_limits<double>::infinity();
    v += sb.value;
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  }

  struct Step {
    std::vector<CMat> dW;
    Vec dx, dy, nu;
    double decrement = 0.0;
  };

  bool newton_step(const Point& p, double t, Step& st) const {
    std::vector<CMat> Winv(nb_), Q(nb_);
    for (int b = 0; b < nb_; ++b) {
      Eigen::LLT<CMat> llt(p.W[b]);
      if (llt.info() != Eigen::Success) return false;
      const Eigen::Index n = p.W[b].rows();
      Winv[b] = llt.solve(CMat::Identity(n, n));
      Q[b] = p.W[b];
      if (b < static_cast<int>(cp_.c_blocks.size()) && cp_.c_blocks[b].size())
        Q[b] -= t * p.W[b] * cp_.c_blocks[b] * p.W[b];
    }
    // P[r] holds W_b A_rb W_b for each block entry of row r.
    std::vector<std::vector<CMat>> P(nr_);
    for (int r = 0; r < nr_; ++r)
      for (const auto& [b, A] : cp_.rows[r].blocks) P[r].push_back(p.W[b] * A * p.W[b]);

    Mat S = Mat::Zero(nr_, nr_);
    for (int r = 0; r < nr_; ++r)
      for (int s = 0; s < nr_; ++s) {
        double v = 0.0;
        const auto& br = cp_.rows[r].blocks;
        const auto& bs = cp_.rows[s].blocks;
        for (size_t i = 0; i < br.size(); ++i)
          for (size_t j = 0; j < bs.size(); ++j)
            if (br[i].first == bs[j].first) v += inner(br[i].second, P[s][j]);
        S(r, s) = v;
      }
    for (int r = 0; r < nr_; ++r)
      if (!cp_.rows[r].equality) S(r, r) += p.y(r) * p.y(r);

    const Vec res = primal_residual(p);
    Vec q(nr_);
    for (int r = 0; r < nr_; ++r) {
      double v = -res(r) - (cp_.rows[r].equality ? 0.0 : p.y(r));
      for (const auto& [b, A] : cp_.rows[r].blocks) v -= inner(A, Q[b]);
      q(r) = v;
    }

    ScalarBarrier sb;
    if (!scalar_barrier(cp_, p.x, sb, true)) return false;
    Vec gx = sb.grad;
    if (cp_.c_scalar.size()) gx += t * cp_.c_scalar;
    Mat Ax = Mat::Zero(nr_, nx_);
    for (int r = 0; r < nr_; ++r)
      for (auto [i, a] : cp_.rows[r].scalars) Ax(r, i) += a;

    const int n = nx_ + nr_;
    Mat K = Mat::Zero(n, n);
    K.topLeftCorner(nx_, nx_) = sb.hess;
    K.topRightCorner(nx_, nr_) = Ax.transpose();
    K.bottomLeftCorner(nr_, nx_) = Ax;
    K.bottomRightCorner(nr_, nr_) = -S;
    Vec rhs(n);
    rhs.head(nx_) = -gx;
    rhs.tail(nr_) = q;
    // Symmetric equilibration; the rank test of the LU is too strict for
    // badly scaled rows, so accept any solve with a small residual.
    Vec dscale = K.diagonal().cwiseAbs().cwiseSqrt();
    for (int i = 0; i < n; ++i)
      if (!(dscale(i) > 0.0) || !std::isfinite(dscale(i))) dscale(i) = 1.0;
    const Mat Ks = dscale.cwiseInverse().asDiagonal() * K * dscale.cwiseInverse().asDiagonal();
    const Vec rs = rhs.cwiseQuotient(dscale);
    Eigen::FullPivLU<Mat> lu(Ks);
    const Vec sol = lu.solve(rs).cwiseQuotient(dscale);
    if (!sol.allFinite()) return false;
    if ((K * sol - rhs).norm() > 1e-8 * (1.0 + rhs.norm())) return false;
    st.dx = sol.head(nx_);
    st.nu = sol.tail(nr_);

    st.dW.assign(nb_, CMat());
    double dec = st.dx.dot(sb.hess * st.dx);
    for (int b = 0; b < nb_; ++b) {
      CMat d = Q[b];
      for (int r = 0; r < nr_; ++r)
        for (size_t i = 0; i < cp_.rows[r].blocks.size(); ++i)
          if (cp_.rows[r].blocks[i].first == b) d -= st.nu(r) * P[r][i];
      d = 0.5 * (d + d.adjoint()).eval();
      const CMat M = Winv[b] * d;
      dec += (M * M).trace().real();
      st.dW[b] = std::move(d);
    }
    st.dy = Vec::Zero(nr_);
    for (int r = 0; r < nr_; ++r) {
      if (cp_.rows[r].equality) continue;
      st.dy(r) = p.y(r) - p.y(r) * p.y(r) * st.nu(r);
      dec += std::pow(st.dy(r) / p.y(r), 2);
    }
    st.decrement = dec;
    return true;
  }

  Point advance(const Point& p, const Step& st, double s) const {
    Point q = p;
    for (int b = 0; b < nb_; ++b) q.W[b] += s * st.dW[b];
    q.x += s * st.dx;
    q.y += s * st.dy;
    return q;
  }

 private:
  const ConicProgram& cp_;
  int nb_ = 0, nr_ = 0, nx_ = 0;
  double degree_ = 0.0;
};

}  // namespace

ConicSolution solve_conic(const ConicProgram& cp, double tol, int max_iter) {
  const int nb = static_cast<int>(cp.block_dims.size());
  const int nr = static_cast<int>(cp.rows.size());
  if (static_cast<int>(cp.W0.size()) != nb || cp.x0.size() != cp.n_scalar ||
      (cp.c_scalar.size() != 0 && cp.c_scalar.size() != cp.n_scalar) ||
      (!cp.c_blocks.empty() && static_cast<int>(cp.c_blocks.size()) != nb))
    throw Error(ErrorCode::ShapeMismatch, "conic program dimensions are inconsistent");
  for (int b = 0; b < nb; ++b) {
    if (cp.W0[b].rows() != cp.block_dims[b] || cp.W0[b].cols() != cp.block_dims[b])
      throw Error(ErrorCode::ShapeMismatch, "starting block has wrong size");
    Eigen::LLT<CMat> llt(cp.W0[b]);
    if (llt.info() != Eigen::Success)
      throw Error(ErrorCode::NoStrictlyFeasiblePoint, "starting block is not positive definite");
  }
  for (const auto& row : cp.rows) {
    for (const auto& [b, A] : row.blocks)
      if (b < 0 || b >= nb || A.rows() != cp.block_dims[b] || A.cols() != cp.block_dims[b])
        throw Error(ErrorCode::ShapeMismatch, "row coefficient does not match its block");
    for (auto [i, a] : row.scalars)
      if (i < 0 || i >= cp.n_scalar) throw Error(ErrorCode::ShapeMismatch, "row references unknown scalar");
  }
  {
    ScalarBarrier sb;
    if (!scalar_barrier(cp, cp.x0, sb, false))
      throw Error(ErrorCode::NoStrictlyFeasiblePoint, "starting scalars outside the constraint domain");
  }

  Engine eng(cp);
  Point p{cp.W0, cp.x0, Vec::Zero(nr)};
  for (int r = 0; r < nr; ++r) {
    if (cp.rows[r].equality) continue;
    const double slack = cp.rows[r].rhs - eng.row_value(p, r);
    p.y(r) = std::max(slack, 1e-3 * (1.0 + std::abs(cp.rows[r].rhs)));
  }
  Vec nu = Vec::Zero(nr);
  const double rhs_scale = 1.0 + [&] {
    double m = 0.0;
    for (const auto& r : cp.rows) m = std::max(m, std::abs(r.rhs));
    return m;
  }();

  ConicSolution out;
  double t = 1.0;
  int iter = 0;
  bool done = false;
  bool stalled_infeasible = false, reached_feasible = false, stalled = false;
  // Once the equality rows hold, Newton steps keep them; later residual drift
  // is rounding and a stall there means the path cannot be followed further.
  auto stall = [&] {
    if (eng.primal_residual(p).norm() <= 1e-8 * rhs_scale) return;
    stalled_infeasible = !reached_feasible;
    stalled = done = true;
  };
  while (!done) {
    while (true) {
      if (iter >= max_iter) {
        done = true;
        break;
      }
      Engine::Step st;
      if (!eng.newton_step(p, t, st)) {
        stall();
        break;
      }
      ++iter;
      const bool feasible = eng.primal_residual(p).norm() <= 1e-10 * rhs_scale;
      reached_feasible = reached_feasible || feasible;
      if (feasible && st.decrement / 2.0 <= 1e-10) {
        nu = st.nu;
        break;
      }
      if (feasible) {
        // Feasible Newton: Armijo search on the barrier function.
        const double f0 = eng.barrier_value(p, t);
        double s = 1.0;
        bool accepted = false;
        while (s > 1e-14) {
          Point trial = eng.advance(p, st, s);
          const double f1 = eng.barrier_value(trial, t);
          if (f1 <= f0 - 0.25 * s * st.decrement) {
            p = std::move(trial);
            // Progress below the resolution of the barrier value ends centring.
            accepted = f0 - f1 > 1e-13 * (1.0 + std::abs(f0));
            break;
          }
          s *= 0.5;
        }
        nu = st.nu;
        if (!accepted) break;  // centred to working precision
        continue;
      }
      const Vec dnu = st.nu - nu;
      double r0 = 0.0;
      eng.residual_norm(p, nu, t, r0);
      double s = 1.0;
      bool accepted = false;
      while (s > 1e-14) {
        Point trial = eng.advance(p, st, s);
        double r1 = 0.0;
        if (eng.residual_norm(trial, nu + s * dnu, t, r1) && r1 <= (1.0 - 0.01 * s) * r0) {
          p = std::move(trial);
          nu += s * dnu;
          accepted = true;
          break;
        }
        s *= 0.5;
      }
      if (!accepted) {
        stall();
        break;
      }
    }
    if (done) break;
    if (eng.degree() / t < tol) break;
    t *= 20.0;
  }

  const Vec res = eng.primal_residual(p);
  out.report.iterations = iter;
  out.report.primal_residual = res.size() ? res.cwiseAbs().maxCoeff() : 0.0;
  out.report.gap = eng.degree() / t;
  out.report.objective = eng.objective(p);
  out.report.x = p.x;
  double rn = 0.0;
  eng.residual_norm(p, nu, t, rn);
  out.report.dual_residual = rn / t;
  if (stalled_infeasible) out.report.status = SolverStatus::Infeasible;
  else if ((stalled || iter >= max_iter) && eng.degree() / t >= tol) out.report.status = SolverStatus::MaxIter;
  else out.report.status = SolverStatus::Optimal;
  out.row_duals = nu / t;
  out.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (const auto& W : p.W) {
    Eigen::SelfAdjointEigenSolver<CMat> es(W, Eigen::EigenvaluesOnly);
    out.min_eigenvalue = std::min(out.min_eigenvalue, es.eigenvalues()(0));
  }
  out.W = std::move(p.W);
  return out;
}

}  // namespace stcomp
