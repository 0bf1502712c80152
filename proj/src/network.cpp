#include "stcomp/network.hpp"

#include <cmath>

#include "stcomp/rng.hpp"

namespace stcomp {

GueNode gue_node(const NetworkInstance& inst, const ScenarioConfig& cfg, int j) {
  GueNode node;
  node.satellite = inst.is_sat(j);
  node.index = node.satellite ? j - inst.M : j;
  node.bandwidth = node.satellite ? cfg.B2 : cfg.B1;
  node.noise = node.satellite ? inst.noise_sat : cfg.noise1;
  node.capacity = node.satellite ? cfg.f_sat : cfg.f_gro;
  node.tau = node.satellite ? cfg.tau_sat : cfg.tau_gro;
  return node;
}

double gue_prop_delay(const NetworkInstance& inst, const ScenarioConfig& cfg, int k, int j) {
  if (!inst.is_sat(j)) return 0.0;
  return inst.geo.dist_gue_sat(k, j - inst.M) * 1e3 / cfg.light_speed;
}

double sue_prop_delay(const NetworkInstance& inst, const ScenarioConfig& cfg, int l, int n) {
  return inst.geo.dist_sue_sat(l, n) * 1e3 / cfg.light_speed;
}

NetworkInstance sample_instance(const ScenarioConfig& cfg, std::uint64_t seed) {
  NetworkInstance inst;
  inst.K = cfg.K;
  inst.L = cfg.L;
  inst.M = cfg.M;
  inst.N = cfg.N;
  inst.geo = sample_geometry(seed, cfg, cfg.geometry_mode);
  inst.noise_sat = cfg.sat_noise_mode == SatNoiseMode::Literal ? cfg.noise2 : 1.0;

  using U = std::uint64_t;
  inst.h_bs.assign(cfg.M, std::vector<CVec>(cfg.K));
  for (int m = 0; m < cfg.M; ++m)
    for (int k = 0; k < cfg.K; ++k) {
      Rng rng = make_rng(seed, {tag("hbs"), U(k), U(m)});
      inst.h_bs[m][k] = gen_terrestrial(rng, inst.geo.dist_gue_bs(k, m), cfg.nt_g).h;
    }

  const double G_dB = cfg.g_over_t_db + 10.0 * std::log10(cfg.temp_k);
  inst.sat.assign(cfg.N, std::vector<SatelliteChannel>(cfg.K));
  inst.g_sat.assign(cfg.N, std::vector<CVec>(cfg.K));
  for (int n = 0; n < cfg.N; ++n)
    for (int k = 0; k < cfg.K; ++k) {
      Rng rng = make_rng(seed, {tag("gsat"), U(k), U(n)});
      const double C = large_scale_C(cfg.carrier_hz, inst.geo.dist_gue_sat(k, n) * 1e3, G_dB, cfg.kappa, cfg.B2,
                                     cfg.temp_k, cfg.light_speed);
      Vec eps(cfg.nt_s);
      for (int i = 0; i < cfg.nt_s; ++i) eps(i) = inst.geo.angle(i, k, n);
      const Vec b = beam_gain(eps, cfg.eps3db_rad, cfg.b_max);
      const CVec r = rain_attenuation(rng, cfg.rain_mu_db, cfg.rain_sigma2_db, cfg.nt_s);
      const double v = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      inst.sat[n][k] = doppler_compensate(assemble_sat_channel(C, b, r, v, G_dB));
      inst.g_sat[n][k] = inst.sat[n][k].g;
    }

  for (int m = 0; m < cfg.M; ++m) inst.order_bs.push_back(sic_order(inst.h_bs[m]));
  for (int n = 0; n < cfg.N; ++n) inst.order_sat.push_back(sic_order(inst.g_sat[n]));

  inst.fso_slope = Table(cfg.L, cfg.N);
  for (int l = 0; l < cfg.L; ++l)
    for (int n = 0; n < cfg.N; ++n) {
      FsoLink link{cfg.wavelength, inst.geo.dist_sue_sat(l, n) * 1e3, cfg.d_t, cfg.d_r, cfg.e_t, cfg.e_r,
                   cfg.eta_t, cfg.eta_r};
      inst.fso.push_back(link);
      inst.fso_slope(l, n) = fso_snr_slope(link, cfg.noise3);
    }

  for (int k = 0; k < cfg.K; ++k) {
    Rng rng = make_rng(seed, {tag("guetask"), U(k)});
    const double d = std::uniform_real_distribution<double>(cfg.gue_d_min, cfg.gue_d_max)(rng);
    const double c = std::uniform_real_distribution<double>(cfg.gue_c_min, cfg.gue_c_max)(rng);
    inst.gue_tasks.push_back({d, c});
  }
  for (int l = 0; l < cfg.L; ++l) {
    Rng rng = make_rng(seed, {tag("suetask"), U(l)});
    const double d = std::uniform_real_distribution<double>(cfg.sue_d_min, cfg.sue_d_max)(rng);
    const double c = std::uniform_real_distribution<double>(cfg.sue_c_min, cfg.sue_c_max)(rng);
    inst.sue_tasks.push_back({d, c});
  }
  return inst;
}

}  // namespace stcomp
