#pragma once

#include "stcomp/solvers/report.hpp"

namespace stcomp {

// minimize c.x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  lb <= x <= ub.
// Empty lb means 0; empty ub means +inf. lb entries must be finite.
struct LinearProgram {
  Vec c;
  Mat A_ub;
  Vec b_ub;
  Mat A_eq;
  Vec b_eq;
  Vec lb;
  Vec ub;
};

SolverReport solve_lp(const LinearProgram& lp, double tol = 1e-9, int max_pivots = 20000);

}  // namespace stcomp
