#pragma once

#include <string_view>

#include "stcomp/types.hpp"

namespace stcomp {

enum class SolverStatus { Optimal, Infeasible, Unbounded, MaxIter };

inline std::string_view to_string(SolverStatus s) {
  switch (s) {
    case SolverStatus::Optimal: return "optimal";
    case SolverStatus::Infeasible: return "infeasible";
    case SolverStatus::Unbounded: return "unbounded";
    case SolverStatus::MaxIter: return "max_iter";
  }
  return "unknown";
}

struct SolverReport {
  SolverStatus status = SolverStatus::MaxIter;
  double objective = 0.0;
  Vec x;                  // scalar / vector primal solution
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
  int iterations = 0;
};

}  // namespace stcomp
