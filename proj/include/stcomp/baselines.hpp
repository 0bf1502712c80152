#pragma once

#include <cstdint>
#include <vector>

#include "stcomp/optimizer.hpp"

namespace stcomp {

// Fixed transmit power (half budget), everything else optimised.
AlgorithmResult run_ftp(const NetworkInstance& inst, const ScenarioConfig& cfg);
// Zero-forcing receivers in place of the SDR beamforming step.
AlgorithmResult run_zfbf(const NetworkInstance& inst, const ScenarioConfig& cfg);
// Equal compute shares, everything else optimised.
AlgorithmResult run_acr(const NetworkInstance& inst, const ScenarioConfig& cfg);

// Uniform random single selection per user among paths that can meet the
// delay budget on their own.
Decision random_decision(const NetworkInstance& inst, const ScenarioConfig& cfg, std::uint64_t seed);

// Random offloading; the remaining blocks are optimised for that decision
// unless cfg.ro_random_plan draws them at random as well.
AlgorithmResult run_ro(const NetworkInstance& inst, const ScenarioConfig& cfg, std::uint64_t seed);

struct HcoResult {
  AlgorithmResult result;
  std::vector<double> best_trace;  // best penalised objective after each swarm iteration
  int evaluations = 0;
};

// Binary particle swarm over the offloading decision. Particles are scored by
// the summed best-response path energies at the initial plan; the best
// decision is then refined with the fixed-decision block updates.
HcoResult run_hco(const NetworkInstance& inst, const ScenarioConfig& cfg, std::uint64_t seed);

}  // namespace stcomp
