#pragma once

#include "stcomp/rng.hpp"
#include "stcomp/types.hpp"

namespace stcomp {

struct TerrestrialChannel {
  CVec h;
};

struct SatelliteChannel {
  CVec g;
  double large_scale = 0.0;
  CVec rain;
  Vec beam_gain;
  double doppler_phase = 0.0;  // cycles, [0, 1)
  double tx_gain_db = 0.0;
};

struct FsoLink {
  double wavelength = 1550e-9;
  double distance = 1e6;  // m
  double d_t = 0.2;
  double d_r = 0.2;
  double e_t = 0.8e-6;
  double e_r = 0.8e-6;
  double eta_t = 0.9;
  double eta_r = 0.9;
};

struct FsoGains {
  double G_t, G_r, L_t, L_r;
};

double pathloss_db(double tau_km);

TerrestrialChannel gen_terrestrial(Rng& rng, double tau_km, int n_antennas);

double large_scale_C(double f_hz, double phi_m, double G_dB, double kappa, double B2, double T,
                     double light_speed = kSpeedOfLight);

// One log-normal amplitude for the link, independent uniform phase per element.
CVec rain_attenuation(Rng& rng, double mu_db, double sigma2_db, int n);

double bessel_j(int order, double x);

Vec beam_gain(const Vec& eps, double eps3db, double b_max);

SatelliteChannel assemble_sat_channel(double large_scale, const Vec& beam_gain, const CVec& rain, double doppler_phase,
                                      double tx_gain_db);

SatelliteChannel doppler_compensate(const SatelliteChannel& ch);

// sqrt(C) * b^(1/2) .* r * exp(j 2 pi v) from the stored factors.
CVec recompose(const SatelliteChannel& ch);

FsoGains fso_gains(const FsoLink& link);

}  // namespace stcomp
