#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "oracles.hpp"

namespace stcomp::oracle {

double bessel_series(int n, double x) {
  const long double h = 0.5L * x;
  long double term = 1.0L;
  for (int i = 1; i <= n; ++i) term *= h / i;  // (x/2)^n / n!
  long double sum = term;
  for (int m = 1; m < 200; ++m) {
    term *= -h * h / (static_cast<long double>(m) * (m + n));
    sum += term;
    if (std::abs(term) < 1e-22L * std::max(1.0L, std::abs(sum))) break;
  }
  return static_cast<double>(sum);
}

Vec jacobi_eigenvalues(const CMat& m, int max_sweeps) {
  // Real symmetric embedding [[Re, -Im], [Im, Re]] doubles every eigenvalue.
  const Eigen::Index n = m.rows();
  Mat a(2 * n, 2 * n);
  a << m.real(), -m.imag(), m.imag(), m.real();
  const Eigen::Index N = 2 * n;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index i = 0; i < N; ++i)
      for (Eigen::Index j = i + 1; j < N; ++j) off += a(i, j) * a(i, j);
    if (off < 1e-30 * std::max(1.0, a.squaredNorm())) break;
    for (Eigen::Index p = 0; p < N; ++p)
      for (Eigen::Index q = p + 1; q < N; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (Eigen::Index k = 0; k < N; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < N; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> d(N);
  for (Eigen::Index i = 0; i < N; ++i) d[i] = a(i, i);
  std::sort(d.begin(), d.end());
  Vec out(n);
  for (Eigen::Index i = 0; i < n; ++i) out(i) = 0.5 * (d[2 * i] + d[2 * i + 1]);
  return out;
}

double max_sinr_value(int k, const std::vector<CVec>& channels, const Vec& p, const SicOrder& order, double noise) {
  using LC = std::complex<long double>;
  using LMat = Eigen::Matrix<LC, Eigen::Dynamic, Eigen::Dynamic>;
  using LVec = Eigen::Matrix<LC, Eigen::Dynamic, 1>;
  const Eigen::Index n = channels[k].size();
  std::vector<int> later;
  for (size_t i = 0; i < channels.size(); ++i)
    if (order.rank[i] > order.rank[k]) later.push_back(static_cast<int>(i));
  LVec s(n);
  for (Eigen::Index r = 0; r < n; ++r)
    s(r) = LC(channels[k](r).real(), channels[k](r).imag()) * std::sqrt(static_cast<long double>(p(k)) / noise);
  long double ss = 0.0L;
  for (Eigen::Index r = 0; r < n; ++r) ss += std::norm(s(r));
  if (later.empty()) return static_cast<double>(ss);
  const Eigen::Index m = static_cast<Eigen::Index>(later.size());
  LMat A(n, m);
  for (Eigen::Index c = 0; c < m; ++c) {
    const long double scale = std::sqrt(static_cast<long double>(p(later[c])) / noise);
    for (Eigen::Index r = 0; r < n; ++r)
      A(r, c) = LC(channels[later[c]](r).real(), channels[later[c]](r).imag()) * scale;
  }
  // s^H (I + A A^H)^-1 s = s^H s - s^H A (I + A^H A)^-1 A^H s
  LMat G = A.adjoint() * A;
  for (Eigen::Index i = 0; i < m; ++i) G(i, i) += 1.0L;
  const LVec u = A.adjoint() * s;
  const LVec z = G.ldlt().solve(u);
  const long double corr = (u.adjoint() * z)(0, 0).real();
  return static_cast<double>(ss - corr);
}

GridPower grid_min_power(double slope, double d_bits, double bandwidth, double budget, double p_max, int points) {
  GridPower g;
  g.step = p_max / points;
  for (int i = 1; i <= points; ++i) {
    const double p = i == points ? p_max : i * g.step;
    const double t = d_bits / (bandwidth * std::log2(1.0 + p * slope));
    if (t <= budget) {
      g.feasible = true;
      g.p = p;
      return g;
    }
  }
  return g;
}

Exhaustive exhaustive_offload(const NetworkInstance& inst, const ScenarioConfig& cfg, const OffloadCosts& costs) {
  const int G = inst.M + inst.N;
  const int users = inst.K + inst.L;
  std::vector<int> radix(users), digit(users, 0);
  for (int u = 0; u < users; ++u) radix[u] = u < inst.K ? G : inst.N;
  Exhaustive best;
  best.objective = std::numeric_limits<double>::infinity();
  const double slack = 1.0 + 1e-9;
  while (true) {
    ++best.enumerated;
    double obj = 0.0;
    bool ok = true;
    std::vector<double> load(G, 0.0);
    for (int k = 0; k < inst.K && ok; ++k) {
      const int j = digit[k];
      const double E = costs.gue_E(k, j);
      if (!std::isfinite(E) || costs.gue_T(k, j) > cfg.z_g * slack) ok = false;
      obj += cfg.rho_g * E;
      load[j] += costs.gue_f(k, j);
    }
    for (int l = 0; l < inst.L && ok; ++l) {
      const int n = digit[inst.K + l];
      const double E = costs.sue_E(l, n);
      if (!std::isfinite(E) || costs.sue_T(l, n) > cfg.z_s * slack) ok = false;
      obj += cfg.rho_s * E;
      load[inst.M + n] += costs.sue_f(l, n);
    }
    for (int j = 0; j < G && ok; ++j)
      if (load[j] > (j < inst.M ? cfg.f_gro : cfg.f_sat) * slack) ok = false;
    if (ok && obj < best.objective) {
      best.feasible = true;
      best.objective = obj;
      best.decision.gue.assign(digit.begin(), digit.begin() + inst.K);
      best.decision.sue.assign(digit.begin() + inst.K, digit.end());
    }
    int u = 0;
    while (u < users && ++digit[u] == radix[u]) digit[u++] = 0;
    if (u == users) break;
  }
  return best;
}

Vertex lp_vertex_enumeration(const LinearProgram& lp) {
  const Eigen::Index n = lp.c.size();
  struct Row {
    Vec a;
    double b;
  };
  std::vector<Row> ineq, eq;
  for (Eigen::Index i = 0; i < lp.b_ub.size(); ++i) ineq.push_back({lp.A_ub.row(i).transpose(), lp.b_ub(i)});
  for (Eigen::Index i = 0; i < lp.b_eq.size(); ++i) eq.push_back({lp.A_eq.row(i).transpose(), lp.b_eq(i)});
  for (Eigen::Index j = 0; j < n; ++j) {
    Vec e = Vec::Zero(n);
    e(j) = -1.0;
    ineq.push_back({e, lp.lb.size() ? -lp.lb(j) : 0.0});
    if (lp.ub.size() && std::isfinite(lp.ub(j))) {
      e(j) = 1.0;
      ineq.push_back({e, lp.ub(j)});
    }
  }
  Vertex best;
  best.objective = std::numeric_limits<double>::infinity();
  const int pick = static_cast<int>(n) - static_cast<int>(eq.size());
  if (pick < 0) return best;
  const int m = static_cast<int>(ineq.size());
  std::vector<int> idx(pick);
  for (int i = 0; i < pick; ++i) idx[i] = i;
  while (pick <= m) {
    Mat A(n, n);
    Vec b(n);
    int r = 0;
    for (const auto& e : eq) {
      A.row(r) = e.a.transpose();
      b(r++) = e.b;
    }
    for (int i : idx) {
      A.row(r) = ineq[i].a.transpose();
      b(r++) = ineq[i].b;
    }
    Eigen::FullPivLU<Mat> lu(A);
    if (lu.rank() == n) {
      const Vec x = lu.solve(b);
      bool ok = true;
      for (const auto& e : eq) ok = ok && std::abs(e.a.dot(x) - e.b) <= 1e-9 * (1.0 + std::abs(e.b));
      for (const auto& e : ineq) ok = ok && e.a.dot(x) <= e.b + 1e-9 * (1.0 + std::abs(e.b));
      if (ok && lp.c.dot(x) < best.objective) {
        best.feasible = true;
        best.objective = lp.c.dot(x);
        best.x = x;
      }
    }
    // Next combination in lexicographic order.
    int i = pick - 1;
    while (i >= 0 && idx[i] == m - pick + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < pick; ++j) idx[j] = idx[j - 1] + 1;
  }
  return best;
}

Vec central_difference(const std::function<double(const Vec&)>& f, const Vec& x, double rel_step) {
  Vec g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = rel_step * std::max(1.0, std::abs(x(i)));
    Vec a = x, b = x;
    a(i) += h;
    b(i) -= h;
    g(i) = (f(a) - f(b)) / (2.0 * h);
  }
  return g;
}

}  // namespace stcomp::oracle
