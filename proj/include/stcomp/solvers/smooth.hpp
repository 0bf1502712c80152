#pragma once

#include <functional>
#include <vector>

#include "stcomp/solvers/report.hpp"

namespace stcomp {

struct SmoothFunction {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;
  std::function<Mat(const Vec&)> hessian;  // optional; finite differences of the gradient otherwise
};

// minimise f(x)  s.t.  g_i(x) <= 0,  lb <= x <= ub  (infinite bounds allowed).
// All functions must be convex on the box.
struct SmoothConvexProgram {
  int n = 0;
  SmoothFunction objective;
  std::vector<SmoothFunction> constraints;
  Vec lb;
  Vec ub;
  Vec x0;  // optional starting guess; phase I runs if it is not strictly feasible
};

struct SmoothSolution {
  SolverReport report;
  std::vector<double> objective_trace;  // f after each centring step
  Vec constraint_duals;
};

// Throws InfeasibleBox when the box has no interior.
SmoothSolution solve_smooth(const SmoothConvexProgram& scp, double tol = 1e-9, int max_iter = 500);

}  // namespace stcomp
