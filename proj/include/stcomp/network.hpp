#pragma once

#include <cstdint>
#include <vector>

#include "stcomp/channel.hpp"
#include "stcomp/config.hpp"
#include "stcomp/geometry.hpp"
#include "stcomp/linkrate.hpp"

namespace stcomp {

struct TaskSpec {
  double d = 0.0;  // bits
  double c = 0.0;  // cycles/bit
  double cycles() const { return d * c; }
};

// One sampled realisation of the network for a single time slot.
struct NetworkInstance {
  int K = 0, L = 0, M = 0, N = 0;
  GeometrySample geo;
  std::vector<std::vector<CVec>> h_bs;               // [m][k]
  std::vector<std::vector<SatelliteChannel>> sat;    // [n][k], Doppler-compensated
  std::vector<std::vector<CVec>> g_sat;              // [n][k], copy of sat[n][k].g
  std::vector<SicOrder> order_bs;                    // [m]
  std::vector<SicOrder> order_sat;                   // [n]
  std::vector<FsoLink> fso;                          // l * N + n
  Table fso_slope;                                   // L x N, SNR per watt
  std::vector<TaskSpec> gue_tasks;
  std::vector<TaskSpec> sue_tasks;
  double noise_sat = 0.0;                            // effective noise at satellite receivers

  // GUE offloading targets are numbered j = 0..M-1 (BSs) then M..M+N-1 (satellites).
  int gue_nodes() const { return M + N; }
  bool is_sat(int j) const { return j >= M; }
  const std::vector<CVec>& node_channels(int j) const { return j < M ? h_bs[j] : g_sat[j - M]; }
  const SicOrder& node_order(int j) const { return j < M ? order_bs[j] : order_sat[j - M]; }
};

// Per-node constants of a GUE offloading target.
struct GueNode {
  bool satellite = false;
  int index = 0;
  double bandwidth = 0.0;
  double noise = 0.0;
  double capacity = 0.0;
  double tau = 0.0;
};

GueNode gue_node(const NetworkInstance& inst, const ScenarioConfig& cfg, int j);

// Propagation delay (s) from GUE k to node j; zero for base stations.
double gue_prop_delay(const NetworkInstance& inst, const ScenarioConfig& cfg, int k, int j);
double sue_prop_delay(const NetworkInstance& inst, const ScenarioConfig& cfg, int l, int n);

NetworkInstance sample_instance(const ScenarioConfig& cfg, std::uint64_t seed);

}  // namespace stcomp
