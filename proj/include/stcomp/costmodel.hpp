#pragma once

#include <string>
#include <vector>

#include "stcomp/config.hpp"
#include "stcomp/linkrate.hpp"
#include "stcomp/network.hpp"

namespace stcomp {

struct PathCost {
  double T = 0.0;  // s
  double E = 0.0;  // J
};

PathCost cost_gue_bs(const TaskSpec& task, double rate, double f, double tau, double p);
PathCost cost_gue_sat(const TaskSpec& task, double rate, double f, double tau, double p, double phi_m,
                      double light_speed = kSpeedOfLight);
PathCost cost_sue_sat(const TaskSpec& task, double rate, double f, double tau, double q, double phi_m,
                      double light_speed = kSpeedOfLight);

struct Plan {
  Table alpha;    // K x M
  Table beta;     // K x N
  Table gamma;    // L x N
  Beamformers bf;
  Vec p;          // K
  Vec q;          // L
  Table f_gro;    // K x M
  Table f_sat_g;  // K x N
  Table f_sat_s;  // L x N

  static Plan empty(int K, int L, int M, int N);

  // Selected node of GUE k in the 0..M+N-1 numbering, or -1.
  int gue_choice(int k) const;
  int sue_choice(int l) const;
  double gue_f(int k, int j) const;
  void set_gue_f(int k, int j, double f);
  const CVec& receiver(int k, int j) const;
  CVec& receiver(int k, int j);
  void select_gue(int k, int j);
  void select_sue(int l, int n);
};

struct CostReport {
  Vec T_gg, T_gs, E_gg, E_gs;  // K
  Vec T_ss, E_ss;              // L
  Table I_g;                   // K x M interference at the selected receivers
  Table I_s;                   // K x N
  Vec I_l;                     // L, optical SNR slope of the selected link
  double xi = 0.0;
};

CostReport evaluate_plan(const NetworkInstance& inst, const Plan& plan, const ScenarioConfig& cfg);

// Recomputes the weighted objective from the stored components.
double weighted_total(const CostReport& rep, const ScenarioConfig& cfg);

struct Violation {
  std::string constraint;
  int index = 0;
  double amount = 0.0;  // how far past the bound
};

std::vector<Violation> check_feasibility(const NetworkInstance& inst, const Plan& plan, const ScenarioConfig& cfg,
                                         double rel_tol = 1e-9);

}  // namespace stcomp
