#include "stcomp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stcomp/errors.hpp"
#include "stcomp/rng.hpp"

namespace stcomp {

std::vector<Position> build_walker(const ConstellationConfig& cfg) {
  const double r = kEarthRadiusKm + cfg.altitude_km;
  const int total = cfg.planes * cfg.satellites_per_plane;
  const double ci = std::cos(cfg.inclination_rad);
  const double si = std::sin(cfg.inclination_rad);
  std::vector<Position> out;
  out.reserve(total);
  for (int p = 0; p < cfg.planes; ++p) {
    const double raan = 2.0 * kPi * p / cfg.planes;
    const double co = std::cos(raan), so = std::sin(raan);
    for (int s = 0; s < cfg.satellites_per_plane; ++s) {
      const double u = 2.0 * kPi * s / cfg.satellites_per_plane + 2.0 * kPi * cfg.phase_factor * p / total;
      const double cu = std::cos(u), su = std::sin(u);
      out.emplace_back(r * (co * cu - so * su * ci), r * (so * cu + co * su * ci), r * su * si);
    }
  }
  return out;
}

double slant_range(const Position& ground, const Position& sat) { return (sat - ground).norm(); }

Position ground_point(double lat_rad, double lon_rad) {
  return kEarthRadiusKm * Position(std::cos(lat_rad) * std::cos(lon_rad), std::cos(lat_rad) * std::sin(lon_rad),
                                   std::sin(lat_rad));
}

namespace {

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

// Random ground point within `spread_km` (great-circle) of `center`.
Position scatter(Rng& rng, const Position& center, double spread_km) {
  const Position up = center.normalized();
  Position east = Position::UnitZ().cross(up);
  if (east.norm() < 1e-12) east = Position::UnitX();
  east.normalize();
  const Position north = up.cross(east);
  const double dist = spread_km * std::sqrt(uniform(rng, 0.0, 1.0));
  const double bearing = uniform(rng, 0.0, 2.0 * kPi);
  const double ang = dist / kEarthRadiusKm;
  const Position dir = std::cos(bearing) * east + std::sin(bearing) * north;
  return kEarthRadiusKm * (std::cos(ang) * up + std::sin(ang) * dir);
}

}  // namespace

GeometrySample sample_geometry(std::uint64_t seed, const ScenarioConfig& cfg, GeometryMode mode) {
  GeometrySample g;
  g.dist_gue_bs = Table(cfg.K, cfg.M);
  g.dist_gue_sat = Table(cfg.K, cfg.N);
  g.dist_sue_sat = Table(cfg.L, cfg.N);
  g.nt_s = cfg.nt_s;

  for (int k = 0; k < cfg.K; ++k)
    for (int m = 0; m < cfg.M; ++m) {
      Rng rng = make_rng(seed, {tag("gbsdist"), static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(m)});
      g.dist_gue_bs(k, m) = uniform(rng, cfg.gue_bs_km_min, cfg.gue_bs_km_max);
    }
  for (int l = 0; l < cfg.L; ++l)
    for (int n = 0; n < cfg.N; ++n) {
      Rng rng = make_rng(seed, {tag("ssatdist"), static_cast<std::uint64_t>(l), static_cast<std::uint64_t>(n)});
      g.dist_sue_sat(l, n) = uniform(rng, cfg.sue_sat_km_min, cfg.sue_sat_km_max);
    }

  if (mode == GeometryMode::Direct) {
    for (int k = 0; k < cfg.K; ++k)
      for (int n = 0; n < cfg.N; ++n) {
        Rng rng = make_rng(seed, {tag("gsatdist"), static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(n)});
        g.dist_gue_sat(k, n) = uniform(rng, cfg.gue_sat_km_min, cfg.gue_sat_km_max);
      }
  } else {
    ConstellationConfig cc{cfg.walker_altitude_km, cfg.walker_inclination_rad, cfg.walker_planes,
                           cfg.walker_sats_per_plane, cfg.walker_phase};
    const auto sats = build_walker(cc);
    const Position center = ground_point(cfg.ground_lat_rad, cfg.ground_lon_rad);
    std::vector<Position> gues;
    for (int k = 0; k < cfg.K; ++k) {
      Rng rng = make_rng(seed, {tag("guepos"), static_cast<std::uint64_t>(k)});
      gues.push_back(scatter(rng, center, cfg.ground_spread_km));
    }
    auto in_window = [&](const Position& p, const Position& s) {
      const double d = slant_range(p, s);
      return d >= cfg.gue_sat_km_min && d <= cfg.gue_sat_km_max;
    };
    std::vector<int> visible;
    for (int s = 0; s < static_cast<int>(sats.size()); ++s) {
      bool ok = in_window(center, sats[s]);
      for (const auto& p : gues) ok = ok && in_window(p, sats[s]);
      if (ok) visible.push_back(s);
    }
    if (static_cast<int>(visible.size()) < cfg.N)
      throw Error(ErrorCode::EmptyVisibility, std::to_string(visible.size()) + " satellites in window, need " +
                                                  std::to_string(cfg.N));
    std::stable_sort(visible.begin(), visible.end(), [&](int a, int b) {
      return slant_range(center, sats[a]) < slant_range(center, sats[b]);
    });
    for (int k = 0; k < cfg.K; ++k)
      for (int n = 0; n < cfg.N; ++n) g.dist_gue_sat(k, n) = slant_range(gues[k], sats[visible[n]]);
  }

  g.boresight.assign(static_cast<size_t>(cfg.K) * cfg.N * cfg.nt_s, 0.0);
  for (int k = 0; k < cfg.K; ++k)
    for (int n = 0; n < cfg.N; ++n) {
      Rng rng = make_rng(seed, {tag("boresite"), static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(n)});
      const double base = uniform(rng, 0.0, cfg.boresight_max_frac * cfg.eps3db_rad);
      for (int i = 0; i < cfg.nt_s; ++i) {
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        const double a = std::max(0.0, base + sign * cfg.boresight_perturb_rad);
        g.boresight[(static_cast<size_t>(k) * cfg.N + n) * cfg.nt_s + i] = std::min(a, kPi / 2 - 1e-9);
      }
    }
  return g;
}

}  // namespace stcomp
