#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stcomp/costmodel.hpp"
#include "stcomp/solvers/report.hpp"
#include "stcomp/solvers/smooth.hpp"

namespace stcomp {

// Selected node per user: GUEs use 0..M+N-1 (BSs first), SUEs use 0..N-1.
struct Decision {
  std::vector<int> gue;
  std::vector<int> sue;
  bool operator==(const Decision&) const = default;
};

struct RelaxedDecision {
  Table alpha, beta, gamma;
  double objective = 0.0;
  SolverStatus status = SolverStatus::Optimal;
};

// Per-path energy, delay and compute allocation used as fixed coefficients by
// the offloading subproblem. Paths that cannot meet their delay budget on
// their own carry E = +inf.
struct OffloadCosts {
  Table gue_E, gue_T, gue_f, gue_fmin;  // K x (M+N)
  Table sue_E, sue_T, sue_f, sue_fmin;  // L x N
  Table gue_p;                          // power that goes with gue_E
  Table sue_qp;                         // L x N power that goes with sue_E
};

// Best single-path response: minimum energy of one task on one node with
// interference frozen. NaN for p_fixed / f_fixed means the variable is free.
struct PathResponse {
  bool feasible = false;
  double E = 0.0, T = 0.0, f = 0.0, power = 0.0, t_tx = 0.0;
};

PathResponse path_best_response(double slope, const TaskSpec& task, double bandwidth, double budget, double tau,
                                double capacity, double power_max, double p_fixed, double f_fixed);

OffloadCosts literal_offload_costs(const NetworkInstance& inst, const ScenarioConfig& cfg, const Plan& plan);

struct CostOptions {
  bool fixed_power = false;
  bool fixed_compute = false;
  bool keep_selected = true;  // selected paths keep their current (p, f)
};

OffloadCosts best_response_costs(const NetworkInstance& inst, const ScenarioConfig& cfg, const Plan& plan,
                                 const CostOptions& opt);

RelaxedDecision solve_offload_relaxed(const NetworkInstance& inst, const ScenarioConfig& cfg,
                                      const OffloadCosts& costs);
RelaxedDecision solve_offload_relaxed(const NetworkInstance& inst, const ScenarioConfig& cfg, const Plan& fixed);

Decision map_to_binary(const RelaxedDecision& relaxed);

// Moves users off nodes whose minimum required compute exceeds capacity.
// Throws IrreparableCapacity.
Decision repair_capacity(const Decision& decision, const RelaxedDecision& relaxed, const OffloadCosts& costs,
                         const NetworkInstance& inst, const ScenarioConfig& cfg);

double decision_cost(const Decision& d, const OffloadCosts& costs, const ScenarioConfig& cfg);
bool capacity_ok(const Decision& d, const OffloadCosts& costs, const NetworkInstance& inst, const ScenarioConfig& cfg,
                 bool use_minimum);

struct BnbResult {
  Decision decision;
  double objective = 0.0;
  int nodes = 0;
};

// Exact best-first branch and bound over the offloading LP; oracle scale only.
// Throws BudgetExceeded (node budget or instance too large), Infeasible.
BnbResult bnb_offload(const NetworkInstance& inst, const ScenarioConfig& cfg, const OffloadCosts& costs,
                      int budget = 100000);

Plan apply_decision(const Plan& plan, const Decision& d);
Decision decision_of(const Plan& plan);

enum class ScaInit { MaxSinr, MatchedFilter };

struct ScaLinkResult {
  CVec w;
  double sinr = 0.0;
  double start_sinr = 0.0;
  int outer = 0;
  double rank_one = 1.0;
  std::vector<double> objective;  // 1/log2(1+SINR) after each accepted step
  SolverStatus status = SolverStatus::Optimal;
  bool delay_row_dropped = false;
};

// One receive beamformer via the SDR/SCA chain. `budget` is the residual
// delay available for transmission (s); <= 0 omits the delay row.
ScaLinkResult sca_link(const std::vector<CVec>& channels, int k, const Vec& p, const SicOrder& order, double noise,
                       double bandwidth, double d_bits, double budget, const CVec& init, int max_outer, double tol);

struct ScaResult {
  Beamformers bf;
  std::vector<ScaLinkResult> links;
  double min_rank_one = 1.0;
  int total_outer = 0;
};

// Selected links go through sca_link; unselected links get the closed-form
// max-SINR receiver.
ScaResult sca_beamforming(const NetworkInstance& inst, const ScenarioConfig& cfg, const Plan& plan, ScaInit init,
                          int max_outer, double tol);

// Receivers for every (user, node) pair from the closed form.
Beamformers closed_form_receivers(const NetworkInstance& inst, const ScenarioConfig& cfg, const Vec& p);
Beamformers zf_receivers(const NetworkInstance& inst, bool* any_infeasible);

// Minimum GUE powers meeting the delay budgets at the plan's compute
// allocation. `sweeps` = 0 iterates to the fixed point. Throws
// NegativeDelayBudget.
Vec gue_power_closed_form(const NetworkInstance& inst, const ScenarioConfig& cfg, const Plan& plan, int sweeps = 0);

struct ResourceResult {
  Vec p;
  Vec q;
  Table f_gro, f_sat_g, f_sat_s;
  SolverReport report;
  std::vector<double> objective_trace;
};

struct ResourceOptions {
  bool gue_power_free = false;  // also optimise GUE transmit time (frozen interference)
  bool sue_power_free = true;
  bool compute_free = true;
};

// Convex program over SUE transmit-time variables and all compute
// allocations with GUE powers fixed. Throws Infeasible.
ResourceResult sue_power_and_compute(const NetworkInstance& inst, const ScenarioConfig& cfg, const Plan& plan,
                                     double tol = 1e-9);
ResourceResult resource_allocation(const NetworkInstance& inst, const ScenarioConfig& cfg, const Plan& plan,
                                   const ResourceOptions& opt, double tol = 1e-9);
// The program handed to the smooth solver: one normalised transmit-time
// variable and one compute variable (GHz) per free task, variables in task
// order (GUEs then SUEs).
SmoothConvexProgram resource_program(const NetworkInstance& inst, const ScenarioConfig& cfg, const Plan& plan,
                                     const ResourceOptions& opt);

double q_tilde_from_q(double q, double slope);
double q_from_q_tilde(double q_tilde, double slope);

struct IterationStep {
  int t = 0;
  double xi = 0.0;
  SolverStatus offload_status = SolverStatus::Optimal;
  int sca_outer = 0;
  double min_rank_one = 1.0;
  SolverStatus resource_status = SolverStatus::Optimal;
  std::string resource_variant;
  bool accepted = true;
  double seconds_offload = 0.0, seconds_beam = 0.0, seconds_power = 0.0, seconds_resource = 0.0;
};

struct IterationTrace {
  std::vector<double> xi;  // accepted objective per iteration
  std::vector<IterationStep> steps;
  bool converged = false;
};

struct AoOptions {
  bool fixed_power = false;
  bool fixed_compute = false;
  bool zero_forcing = false;
  std::optional<Decision> fixed_decision;
  ScaInit sca_init = ScaInit::MaxSinr;
  int max_iter = -1;  // <0: take from config
  double tol = -1.0;
};

struct AlgorithmResult {
  Plan plan;
  CostReport cost;
  IterationTrace trace;
  bool zf_infeasible = false;
};

Plan initial_plan(const NetworkInstance& inst, const ScenarioConfig& cfg);

// Throws ScenarioInfeasible listing violated constraints.
AlgorithmResult run_algorithm1(const NetworkInstance& inst, const ScenarioConfig& cfg, const AoOptions& opt = {});

}  // namespace stcomp
