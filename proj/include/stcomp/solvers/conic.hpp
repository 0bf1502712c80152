#pragma once

#include <utility>
#include <vector>

#include "stcomp/solvers/report.hpp"

namespace stcomp {

// sum_b Re tr(A_b W_b) + a.x  (= or <=)  rhs
struct ConicRow {
  std::vector<std::pair<int, CMat>> blocks;
  std::vector<std::pair<int, double>> scalars;
  double rhs = 0.0;
  bool equality = false;
};

// num / x[den] <= x[bound], with x[den] > 0
struct HyperbolicConstraint {
  int den = 0;
  int bound = 0;
  double num = 1.0;
};

// x[lhs] <= coef * log2(1 + scale * x[arg])
struct LogConstraint {
  int lhs = 0;
  int arg = 0;
  double coef = 1.0;
  double scale = 1.0;
};

// minimise sum_b Re tr(C_b W_b) + c.x over Hermitian W_b >= 0 and scalars x.
struct ConicProgram {
  std::vector<int> block_dims;
  int n_scalar = 0;
  std::vector<CMat> c_blocks;  // empty: zero objective on blocks
  Vec c_scalar;
  std::vector<ConicRow> rows;
  std::vector<HyperbolicConstraint> hyperbolic;
  std::vector<LogConstraint> logs;
  // Starting point: W0 must be positive definite and x0 inside the scalar
  // constraint domains. Linear rows may be violated.
  std::vector<CMat> W0;
  Vec x0;
};

struct ConicSolution {
  SolverReport report;  // report.x holds the scalar variables
  std::vector<CMat> W;
  Vec row_duals;
  double min_eigenvalue = 0.0;
};

// Log-barrier path following with infeasible-start Newton steps. Throws
// NoStrictlyFeasiblePoint if the starting point is outside the domain.
ConicSolution solve_conic(const ConicProgram& cp, double tol = 1e-7, int max_iter = 200);

}  // namespace stcomp
