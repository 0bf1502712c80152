#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "stcomp/config.hpp"
#include "stcomp/types.hpp"

namespace stcomp {

using Position = Eigen::Vector3d;  // Earth-centred, km

struct ConstellationConfig {
  double altitude_km = 550.0;
  double inclination_rad = 53.0 * kPi / 180.0;
  int planes = 72;
  int satellites_per_plane = 22;
  int phase_factor = 1;
};

struct GeometrySample {
  Table dist_gue_bs;   // K x M, km
  Table dist_gue_sat;  // K x N, km
  Table dist_sue_sat;  // L x N, km
  int nt_s = 0;
  std::vector<double> boresight;  // (k * N + n) * nt_s + i, rad

  double angle(int i, int k, int n) const {
    return boresight[(static_cast<size_t>(k) * dist_gue_sat.cols() + n) * nt_s + i];
  }
};

std::vector<Position> build_walker(const ConstellationConfig& cfg);

double slant_range(const Position& ground, const Position& sat);

// Point on the Earth's surface at the given latitude/longitude.
Position ground_point(double lat_rad, double lon_rad);

// Each random entity (a GUE-BS pair, a boresight offset, ...) draws from its
// own substream of `seed`, so growing K, M, N or L never perturbs the draws
// of entities that already existed.
GeometrySample sample_geometry(std::uint64_t seed, const ScenarioConfig& cfg, GeometryMode mode);

}  // namespace stcomp
