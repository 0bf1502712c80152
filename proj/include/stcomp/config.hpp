#pragma once

#include <cstdint>
#include <string>

namespace stcomp {

enum class GeometryMode { Direct, Walker };
enum class SatNoiseMode { Literal, Unit };

// All quantities are SI unless the field name carries a unit suffix.
struct ScenarioConfig {
  // counts
  int K = 10;
  int L = 10;
  int M = 2;
  int N = 3;
  int nt_g = 16;
  int nt_s = 16;

  // bandwidths (Hz)
  double B1 = 20e6;
  double B2 = 20e6;
  double B3 = 100e6;

  // noise powers (W)
  double noise1 = 1e-14;
  double noise2 = 1e-14;
  double noise3 = 1e-14;
  SatNoiseMode sat_noise_mode = SatNoiseMode::Literal;

  // power budgets (W)
  double p_max = 1.0;
  double q_max = 1.0;

  // tasks; data sizes in bits, complexity in cycles/bit
  double data_unit_bits = 1000.0;
  double gue_d_min = 200e3;
  double gue_d_max = 400e3;
  double gue_c_min = 100.0;
  double gue_c_max = 150.0;
  double sue_d_min = 200e3;
  double sue_d_max = 400e3;
  double sue_c_min = 100.0;
  double sue_c_max = 150.0;

  // delay budgets (s)
  double z_g = 0.1;
  double z_s = 0.1;

  // MEC capacities (cycles/s)
  double f_gro = 30e9;
  double f_sat = 10e9;

  double rho_g = 1.0;
  double rho_s = 1.0;
  double tau_gro = 5e-27;
  double tau_sat = 5e-27;

  // satellite RF link
  double carrier_hz = 6e9;
  double kappa = 1.38e-23;
  double temp_k = 300.0;
  double g_over_t_db = 34.0;
  double rain_mu_db = -2.6;
  double rain_sigma2_db = 1.63;
  double eps3db_rad = 0.4 * 3.14159265358979323846 / 180.0;
  double b_max = 25.118864315095795;  // 14 dBi
  double boresight_max_frac = 0.8;
  double boresight_perturb_rad = 0.02 * 3.14159265358979323846 / 180.0;

  // optical inter-satellite link
  double wavelength = 1550e-9;
  double d_t = 0.2;
  double d_r = 0.2;
  double e_t = 0.8e-6;
  double e_r = 0.8e-6;
  double eta_t = 0.9;
  double eta_r = 0.9;

  double light_speed = 3e8;

  // geometry
  GeometryMode geometry_mode = GeometryMode::Direct;
  double gue_bs_km_min = 0.05;
  double gue_bs_km_max = 1.0;
  double gue_sat_km_min = 550.0;
  double gue_sat_km_max = 2700.0;
  double sue_sat_km_min = 500.0;
  double sue_sat_km_max = 1500.0;
  int walker_planes = 72;
  int walker_sats_per_plane = 22;
  int walker_phase = 1;
  double walker_altitude_km = 550.0;
  double walker_inclination_rad = 53.0 * 3.14159265358979323846 / 180.0;
  double ground_lat_rad = 30.0 * 3.14159265358979323846 / 180.0;
  double ground_lon_rad = 0.0;
  double ground_spread_km = 50.0;

  // algorithm controls
  int ao_max_iter = 30;
  double ao_tol = 1e-4;
  int sca_max_outer = 20;
  double sca_tol = 1e-5;
  bool ro_random_plan = false;
  int hco_swarm = 50;
  int hco_iters = 100;
  double hco_inertia = 0.7;
  double hco_c1 = 1.5;
  double hco_c2 = 1.5;
  double hco_penalty_factor = 1e3;
  int hco_patience = 20;

  std::uint64_t seed = 1;
};

// Throws Error(ValidationError) naming the first offending field.
void validate(const ScenarioConfig& cfg);

// JSON text -> config. Omitted keys keep their defaults; unknown keys are
// rejected. Values are numbers in the field's unit or strings like "30 dBm".
ScenarioConfig parse_scenario(const std::string& json_text);
ScenarioConfig load_scenario(const std::string& path);

// Numeric access by JSON key, in the stored unit. Throws ValidationError for
// unknown keys. set_field does not validate.
double get_field(const ScenarioConfig& cfg, const std::string& key);
void set_field(ScenarioConfig& cfg, const std::string& key, double value);

// Flat JSON dump in canonical units (round-trips through parse_scenario).
std::string to_json(const ScenarioConfig& cfg);

}  // namespace stcomp
