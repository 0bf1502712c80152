#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stcomp {

enum class ErrorCode {
  NonPositiveDistance,
  NonPositiveParameter,
  ShapeMismatch,
  ZeroPower,
  SingularCovariance,
  ZeroRate,
  ZeroCompute,
  MaxIterationsExceeded,
  NoStrictlyFeasiblePoint,
  InfeasibleBox,
  NotHermitian,
  Infeasible,
  IrreparableCapacity,
  BudgetExceeded,
  ScaDiverged,
  NegativeDelayBudget,
  ScenarioInfeasible,
  EmptyVisibility,
  ParseError,
  ValidationError,
  EmptyInput,
  AssertionFailed,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (the harness in particular) can branch on it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveDistance: return "NonPositiveDistance";
    case ErrorCode::NonPositiveParameter: return "NonPositiveParameter";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::ZeroPower: return "ZeroPower";
    case ErrorCode::SingularCovariance: return "SingularCovariance";
    case ErrorCode::ZeroRate: return "ZeroRate";
    case ErrorCode::ZeroCompute: return "ZeroCompute";
    case ErrorCode::MaxIterationsExceeded: return "MaxIterationsExceeded";
    case ErrorCode::NoStrictlyFeasiblePoint: return "NoStrictlyFeasiblePoint";
    case ErrorCode::InfeasibleBox: return "InfeasibleBox";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::IrreparableCapacity: return "IrreparableCapacity";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ScaDiverged: return "ScaDiverged";
    case ErrorCode::NegativeDelayBudget: return "NegativeDelayBudget";
    case ErrorCode::ScenarioInfeasible: return "ScenarioInfeasible";
    case ErrorCode::EmptyVisibility: return "EmptyVisibility";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::AssertionFailed: return "AssertionFailed";
  }
  return "Unknown";
}

}  // namespace stcomp
