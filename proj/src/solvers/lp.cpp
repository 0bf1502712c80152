#include "stcomp/solvers/lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "stcomp/errors.hpp"

namespace stcomp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Dense tableau; the last row holds reduced costs, the last column the rhs.
struct Tableau {
  Mat T;
  std::vector<int> basis;
  int pivots = 0;

  int rows() const { return static_cast<int>(T.rows()) - 1; }
  int cols() const { return static_cast<int>(T.cols()) - 1; }

  void pivot(int r, int c) {
    T.row(r) /= T(r, c);
    for (int i = 0; i < T.rows(); ++i) {
      if (i == r) continue;
      const double f = T(i, c);
      if (f != 0.0) T.row(i) -= f * T.row(r);
    }
    basis[r] = c;
    ++pivots;
  }

  // Bland's rule; `allowed` masks columns that may enter.
  SolverStatus run(const std::vector<char>& allowed, double tol, int max_pivots) {
    const Eigen::Index m = T.rows() - 1, n = T.cols() - 1;
    while (true) {
      int enter = -1;
      for (int j = 0; j < n; ++j)
        if (allowed[j] && T(m, j) < -tol) {
          enter = j;
          break;
        }
      if (enter < 0) return SolverStatus::Optimal;
      int leave = -1;
      double best = kInf;
      for (Eigen::Index i = 0; i < m; ++i) {
        const double a = T(i, enter);
        if (a > tol) {
          const double ratio = T(i, n) / a;
          if (leave < 0 || ratio < best - 1e-12 || (ratio <= best + 1e-12 && basis[i] < basis[leave])) {
            leave = static_cast<int>(i);
            best = ratio;
          }
        }
      }
      if (leave < 0) return SolverStatus::Unbounded;
      if (pivots >= max_pivots) return SolverStatus::MaxIter;
      pivot(leave, enter);
    }
  }
};

}  // namespace

SolverReport solve_lp(const LinearProgram& lp, double tol, int max_pivots) {
  const int n = static_cast<int>(lp.c.size());
  const int m_ub = static_cast<int>(lp.b_ub.size());
  const int m_eq = static_cast<int>(lp.b_eq.size());
  if ((m_ub > 0 && lp.A_ub.cols() != n) || lp.A_ub.rows() != m_ub || (m_eq > 0 && lp.A_eq.cols() != n) ||
      lp.A_eq.rows() != m_eq || (lp.lb.size() != 0 && lp.lb.size() != n) || (lp.ub.size() != 0 && lp.ub.size() != n))
    throw Error(ErrorCode::ShapeMismatch, "linear program dimensions are inconsistent");

  const Vec lb = lp.lb.size() ? lp.lb : Vec::Zero(n);
  const Vec ub = lp.ub.size() ? lp.ub : Vec::Constant(n, kInf);
  SolverReport rep;
  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(lb(j))) throw Error(ErrorCode::NonPositiveParameter, "lower bounds must be finite");
    if (ub(j) < lb(j)) {
      rep.status = SolverStatus::Infeasible;
      return rep;
    }
  }

  // Free columns after removing fixed variables; x = lb + x'.
  std::vector<int> free_cols;
  for (int j = 0; j < n; ++j)
    if (ub(j) > lb(j)) free_cols.push_back(j);
  const int nf = static_cast<int>(free_cols.size());

  struct Row {
    Vec a;
    double b;
    bool eq;
  };
  std::vector<Row> rows;
  auto add_row = [&](const Eigen::RowVectorXd& full, double b, bool eq) {
    Row r{Vec(nf), b - full.dot(lb), eq};
    for (int j = 0; j < nf; ++j) r.a(j) = full(free_cols[j]);
    rows.push_back(std::move(r));
  };
  for (int i = 0; i < m_ub; ++i) add_row(lp.A_ub.row(i), lp.b_ub(i), false);
  for (int i = 0; i < m_eq; ++i) add_row(lp.A_eq.row(i), lp.b_eq(i), true);
  for (int j = 0; j < nf; ++j)
    if (std::isfinite(ub(free_cols[j]))) {
      Row r{Vec::Zero(nf), ub(free_cols[j]) - lb(free_cols[j]), false};
      r.a(j) = 1.0;
      rows.push_back(std::move(r));
    }

  const int m = static_cast<int>(rows.size());
  int n_slack = 0;
  for (const auto& r : rows) n_slack += r.eq ? 0 : 1;
  // Columns: structural | slack | artificial | rhs
  const int art0 = nf + n_slack;
  Tableau tab;
  tab.T = Mat::Zero(m + 1, art0 + m + 1);
  tab.basis.assign(m, -1);
  int slack = nf;
  int n_art = 0;
  for (int i = 0; i < m; ++i) {
    const double sign = rows[i].b < 0.0 ? -1.0 : 1.0;
    tab.T.row(i).head(nf) = sign * rows[i].a.transpose();
    tab.T(i, art0 + m) = sign * rows[i].b;
    if (!rows[i].eq) {
      tab.T(i, slack) = sign;
      if (sign > 0) tab.basis[i] = slack;
      ++slack;
    }
    if (tab.basis[i] < 0) {
      tab.T(i, art0 + i) = 1.0;
      tab.basis[i] = art0 + i;
      ++n_art;
    }
  }
  const int total = art0 + m;
  std::vector<char> allowed(total, 1);

  // Phase 1: minimise the sum of artificials.
  if (n_art > 0) {
    for (int i = 0; i < m; ++i)
      if (tab.basis[i] >= art0) tab.T.row(m) -= tab.T.row(i);
    for (int i = 0; i < m; ++i)
      if (tab.basis[i] >= art0) tab.T(m, tab.basis[i]) = 0.0;
    const auto st = tab.run(allowed, tol, max_pivots);
    if (st == SolverStatus::MaxIter) {
      rep.status = st;
      rep.iterations = tab.pivots;
      return rep;
    }
    if (-tab.T(m, total) > tol * std::max(1.0, tab.T.col(total).head(m).cwiseAbs().maxCoeff())) {
      rep.status = SolverStatus::Infeasible;
      rep.iterations = tab.pivots;
      return rep;
    }
    // Drive remaining artificials out of the basis where possible.
    for (int i = 0; i < m; ++i) {
      if (tab.basis[i] < art0) continue;
      for (int j = 0; j < art0; ++j)
        if (std::abs(tab.T(i, j)) > 1e-9) {
          tab.pivot(i, j);
          break;
        }
    }
  }
  for (int j = art0; j < total; ++j) allowed[j] = 0;

  // Phase 2 objective row.
  tab.T.row(m).setZero();
  for (int j = 0; j < nf; ++j) tab.T(m, j) = lp.c(free_cols[j]);
  for (int i = 0; i < m; ++i) {
    const int b = tab.basis[i];
    if (b < nf && tab.T(m, b) != 0.0) tab.T.row(m) -= tab.T(m, b) * tab.T.row(i);
  }
  const auto st = tab.run(allowed, tol, max_pivots);
  rep.iterations = tab.pivots;
  if (st != SolverStatus::Optimal) {
    rep.status = st;
    return rep;
  }

  rep.x = lb;
  for (int i = 0; i < m; ++i)
    if (tab.basis[i] < nf) rep.x(free_cols[tab.basis[i]]) += tab.T(i, total);
  rep.objective = lp.c.dot(rep.x);
  double res = 0.0;
  if (m_ub) res = std::max(res, (lp.A_ub * rep.x - lp.b_ub).cwiseMax(0.0).maxCoeff());
  if (m_eq) res = std::max(res, (lp.A_eq * rep.x - lp.b_eq).cwiseAbs().maxCoeff());
  res = std::max(res, (lb - rep.x).cwiseMax(0.0).maxCoeff());
  res = std::max(res, (rep.x - ub).cwiseMax(0.0).maxCoeff());
  rep.primal_residual = res;
  rep.status = SolverStatus::Optimal;
  return rep;
}

}  // namespace stcomp
