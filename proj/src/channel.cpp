#include "stcomp/channel.hpp"

#include <cmath>

#include "stcomp/errors.hpp"

namespace stcomp {

double pathloss_db(double tau_km) {
  if (!(tau_km > 0.0)) throw Error(ErrorCode::NonPositiveDistance, "tau = " + std::to_string(tau_km));
  return 128.1 + 37.6 * std::log10(tau_km);
}

TerrestrialChannel gen_terrestrial(Rng& rng, double tau_km, int n_antennas) {
  const double var = std::pow(10.0, -pathloss_db(tau_km) / 10.0);
  std::normal_distribution<double> gauss(0.0, std::sqrt(var / 2.0));
  TerrestrialChannel ch;
  ch.h.resize(n_antennas);
  for (int i = 0; i < n_antennas; ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    ch.h(i) = Complex(re, im);
  }
  return ch;
}

double large_scale_C(double f_hz, double phi_m, double G_dB, double kappa, double B2, double T, double light_speed) {
  if (!(f_hz > 0 && phi_m > 0 && kappa > 0 && B2 > 0 && T > 0 && light_speed > 0))
    throw Error(ErrorCode::NonPositiveParameter, "large-scale fading inputs must be positive");
  const double a = light_speed / (4.0 * kPi * f_hz * phi_m);
  return a * a * std::pow(10.0, G_dB / 10.0) / (kappa * B2 * T);
}

CVec rain_attenuation(Rng& rng, double mu_db, double sigma2_db, int n) {
  std::normal_distribution<double> gauss(mu_db, std::sqrt(sigma2_db));
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
  const double amp = std::pow(10.0, gauss(rng) / 20.0);
  CVec r(n);
  for (int i = 0; i < n; ++i) r(i) = std::polar(amp, -phase(rng));
  return r;
}

double bessel_j(int order, double x) { return std::cyl_bessel_j(static_cast<double>(order), x); }

Vec beam_gain(const Vec& eps, double eps3db, double b_max) {
  const double s3 = std::sin(eps3db);
  Vec out(eps.size());
  for (Eigen::Index i = 0; i < eps.size(); ++i) {
    const double u = 2.07123 * std::sin(eps(i)) / s3;
    double bracket;
    if (std::abs(u) < 1e-3) {
      const double u2 = u * u;
      bracket = 1.0 - (1.0 / 32.0 + 3.0 / 64.0) * u2 + (1.0 / 768.0 + 36.0 / 30720.0) * u2 * u2;
    } else {
      bracket = bessel_j(1, u) / (2.0 * u) + 36.0 * bessel_j(3, u) / (u * u * u);
    }
    out(i) = b_max * bracket * bracket * bracket;
  }
  return out;
}

CVec recompose(const SatelliteChannel& ch) {
  const Complex rot = std::polar(1.0, 2.0 * kPi * ch.doppler_phase);
  return std::sqrt(ch.large_scale) * (ch.beam_gain.array().sqrt().cast<Complex>() * ch.rain.array()).matrix() * rot;
}

SatelliteChannel assemble_sat_channel(double large_scale, const Vec& beam_gain, const CVec& rain, double doppler_phase,
                                      double tx_gain_db) {
  if (beam_gain.size() != rain.size())
    throw Error(ErrorCode::ShapeMismatch, "beam gain has " + std::to_string(beam_gain.size()) +
                                              " entries, rain has " + std::to_string(rain.size()));
  SatelliteChannel ch;
  ch.large_scale = large_scale;
  ch.beam_gain = beam_gain;
  ch.rain = rain;
  ch.doppler_phase = doppler_phase;
  ch.tx_gain_db = tx_gain_db;
  ch.g = recompose(ch);
  return ch;
}

SatelliteChannel doppler_compensate(const SatelliteChannel& ch) {
  if (ch.g.size() != ch.rain.size()) throw Error(ErrorCode::ShapeMismatch, "channel and rain lengths differ");
  SatelliteChannel out = ch;
  out.g = ch.g * std::polar(1.0, -2.0 * kPi * ch.doppler_phase);
  out.doppler_phase = 0.0;
  return out;
}

FsoGains fso_gains(const FsoLink& link) {
  if (!(link.d_t > 0 && link.d_r > 0 && link.wavelength > 0))
    throw Error(ErrorCode::NonPositiveParameter, "aperture and wavelength must be positive");
  if (link.e_t < 0 || link.e_r < 0) throw Error(ErrorCode::NonPositiveParameter, "pointing error must be >= 0");
  FsoGains g{};
  g.G_t = std::pow(kPi * link.d_t / link.wavelength, 2);
  g.G_r = std::pow(kPi * link.d_r / link.wavelength, 2);
  g.L_t = std::exp(-g.G_t * link.e_t * link.e_t);
  g.L_r = std::exp(-g.G_r * link.e_r * link.e_r);
  return g;
}

}  // namespace stcomp
