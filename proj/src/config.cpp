#include "stcomp/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "stcomp/errors.hpp"
#include "stcomp/types.hpp"

namespace stcomp {
namespace {

using nlohmann::json;

enum class Unit { Count, Plain, Hz, Watt, Bits, Seconds, Km, Meters, Rad, Gain, Db, Flag, Text, Seed };

struct Field {
  const char* name;
  Unit unit;
  std::function<double(const ScenarioConfig&)> get;
  std::function<void(ScenarioConfig&, double)> set;
};

#define REAL_FIELD(member, unit) \
  Field{#member, unit, [](const ScenarioConfig& c) { return static_cast<double>(c.member); }, \
        [](ScenarioConfig& c, double v) { c.member = v; }}
#define INT_FIELD(member) \
  Field{#member, Unit::Count, [](const ScenarioConfig& c) { return static_cast<double>(c.member); }, \
        [](ScenarioConfig& c, double v) { c.member = static_cast<int>(v); }}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      INT_FIELD(K), INT_FIELD(L), INT_FIELD(M), INT_FIELD(N), INT_FIELD(nt_g), INT_FIELD(nt_s),
      REAL_FIELD(B1, Unit::Hz), REAL_FIELD(B2, Unit::Hz), REAL_FIELD(B3, Unit::Hz),
      REAL_FIELD(noise1, Unit::Watt), REAL_FIELD(noise2, Unit::Watt), REAL_FIELD(noise3, Unit::Watt),
      REAL_FIELD(p_max, Unit::Watt), REAL_FIELD(q_max, Unit::Watt),
      REAL_FIELD(data_unit_bits, Unit::Plain),
      REAL_FIELD(gue_d_min, Unit::Bits), REAL_FIELD(gue_d_max, Unit::Bits),
      REAL_FIELD(gue_c_min, Unit::Plain), REAL_FIELD(gue_c_max, Unit::Plain),
      REAL_FIELD(sue_d_min, Unit::Bits), REAL_FIELD(sue_d_max, Unit::Bits),
      REAL_FIELD(sue_c_min, Unit::Plain), REAL_FIELD(sue_c_max, Unit::Plain),
      REAL_FIELD(z_g, Unit::Seconds), REAL_FIELD(z_s, Unit::Seconds),
      REAL_FIELD(f_gro, Unit::Hz), REAL_FIELD(f_sat, Unit::Hz),
      REAL_FIELD(rho_g, Unit::Plain), REAL_FIELD(rho_s, Unit::Plain),
      REAL_FIELD(tau_gro, Unit::Plain), REAL_FIELD(tau_sat, Unit::Plain),
      REAL_FIELD(carrier_hz, Unit::Hz), REAL_FIELD(kappa, Unit::Plain), REAL_FIELD(temp_k, Unit::Plain),
      REAL_FIELD(g_over_t_db, Unit::Db), REAL_FIELD(rain_mu_db, Unit::Db), REAL_FIELD(rain_sigma2_db, Unit::Plain),
      REAL_FIELD(eps3db_rad, Unit::Rad), REAL_FIELD(b_max, Unit::Gain),
      REAL_FIELD(boresight_max_frac, Unit::Plain), REAL_FIELD(boresight_perturb_rad, Unit::Rad),
      REAL_FIELD(wavelength, Unit::Meters), REAL_FIELD(d_t, Unit::Meters), REAL_FIELD(d_r, Unit::Meters),
      REAL_FIELD(e_t, Unit::Rad), REAL_FIELD(e_r, Unit::Rad),
      REAL_FIELD(eta_t, Unit::Plain), REAL_FIELD(eta_r, Unit::Plain),
      REAL_FIELD(light_speed, Unit::Plain),
      Field{"geometry_mode", Unit::Text,
            [](const ScenarioConfig& c) { return c.geometry_mode == GeometryMode::Walker ? 1.0 : 0.0; },
            [](ScenarioConfig& c, double v) { c.geometry_mode = v > 0.5 ? GeometryMode::Walker : GeometryMode::Direct; }},
      REAL_FIELD(gue_bs_km_min, Unit::Km), REAL_FIELD(gue_bs_km_max, Unit::Km),
      REAL_FIELD(gue_sat_km_min, Unit::Km), REAL_FIELD(gue_sat_km_max, Unit::Km),
      REAL_FIELD(sue_sat_km_min, Unit::Km), REAL_FIELD(sue_sat_km_max, Unit::Km),
      INT_FIELD(walker_planes), INT_FIELD(walker_sats_per_plane), INT_FIELD(walker_phase),
      REAL_FIELD(walker_altitude_km, Unit::Km), REAL_FIELD(walker_inclination_rad, Unit::Rad),
      REAL_FIELD(ground_lat_rad, Unit::Rad), REAL_FIELD(ground_lon_rad, Unit::Rad),
      REAL_FIELD(ground_spread_km, Unit::Km),
      INT_FIELD(ao_max_iter), REAL_FIELD(ao_tol, Unit::Plain),
      INT_FIELD(sca_max_outer), REAL_FIELD(sca_tol, Unit::Plain),
      Field{"sat_noise_mode", Unit::Text,
            [](const ScenarioConfig& c) { return c.sat_noise_mode == SatNoiseMode::Unit ? 1.0 : 0.0; },
            [](ScenarioConfig& c, double v) { c.sat_noise_mode = v > 0.5 ? SatNoiseMode::Unit : SatNoiseMode::Literal; }},
      Field{"ro_random_plan", Unit::Flag, [](const ScenarioConfig& c) { return c.ro_random_plan ? 1.0 : 0.0; },
            [](ScenarioConfig& c, double v) { c.ro_random_plan = v > 0.5; }},
      INT_FIELD(hco_swarm), INT_FIELD(hco_iters),
      REAL_FIELD(hco_inertia, Unit::Plain), REAL_FIELD(hco_c1, Unit::Plain), REAL_FIELD(hco_c2, Unit::Plain),
      REAL_FIELD(hco_penalty_factor, Unit::Plain), INT_FIELD(hco_patience),
  };
  return table;
}

#undef REAL_FIELD
#undef INT_FIELD

[[noreturn]] void invalid(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::ValidationError, field + ": " + why);
}

// Factor from `unit` into the canonical unit of `kind`; dB-valued powers are
// handled separately because they are not multiplicative.
double convert(Unit kind, double value, const std::string& unit, const std::string& field, double kb_bits) {
  auto bad = [&]() -> double { invalid(field, "unit '" + unit + "' not accepted here"); };
  switch (kind) {
    case Unit::Hz:
      if (unit == "Hz") return value;
      if (unit == "kHz") return value * 1e3;
      if (unit == "MHz") return value * 1e6;
      if (unit == "GHz") return value * 1e9;
      return bad();
    case Unit::Watt:
      if (unit == "W") return value;
      if (unit == "mW") return value * 1e-3;
      if (unit == "dBm") return std::pow(10.0, (value - 30.0) / 10.0);
      if (unit == "dBW") return std::pow(10.0, value / 10.0);
      return bad();
    case Unit::Bits:
      if (unit == "bit" || unit == "bits") return value;
      if (unit == "Kbit" || unit == "kbit") return value * 1e3;
      if (unit == "KB" || unit == "kB") return value * kb_bits;
      if (unit == "MB") return value * kb_bits * 1e3;
      return bad();
    case Unit::Seconds:
      if (unit == "s") return value;
      if (unit == "ms") return value * 1e-3;
      if (unit == "us") return value * 1e-6;
      return bad();
    case Unit::Km:
      if (unit == "km") return value;
      if (unit == "m") return value * 1e-3;
      return bad();
    case Unit::Meters:
      if (unit == "m") return value;
      if (unit == "cm") return value * 1e-2;
      if (unit == "mm") return value * 1e-3;
      if (unit == "um") return value * 1e-6;
      if (unit == "nm") return value * 1e-9;
      if (unit == "km") return value * 1e3;
      return bad();
    case Unit::Rad:
      if (unit == "rad") return value;
      if (unit == "mrad") return value * 1e-3;
      if (unit == "urad") return value * 1e-6;
      if (unit == "deg") return value * kPi / 180.0;
      return bad();
    case Unit::Gain:
      if (unit == "linear") return value;
      if (unit == "dB" || unit == "dBi") return std::pow(10.0, value / 10.0);
      return bad();
    case Unit::Db:
      if (unit == "dB" || unit == "dB/K") return value;
      return bad();
    default:
      return bad();
  }
}

double parse_value(const Field& f, const json& v, double kb_bits) {
  const std::string name = f.name;
  if (f.unit == Unit::Text) {
    if (!v.is_string()) invalid(name, "expected a string");
    const auto s = v.get<std::string>();
    if (name == "geometry_mode") {
      if (s == "direct") return 0.0;
      if (s == "walker") return 1.0;
    } else if (name == "sat_noise_mode") {
      if (s == "literal") return 0.0;
      if (s == "unit") return 1.0;
    }
    invalid(name, "unrecognized value '" + s + "'");
  }
  if (f.unit == Unit::Flag) {
    if (!v.is_boolean()) invalid(name, "expected true/false");
    return v.get<bool>() ? 1.0 : 0.0;
  }
  if (v.is_number()) {
    const double x = v.get<double>();
    if (!std::isfinite(x)) invalid(name, "not finite");
    if (f.unit == Unit::Count && x != std::floor(x)) invalid(name, "expected an integer");
    return x;
  }
  if (v.is_string()) {
    if (f.unit == Unit::Count || f.unit == Unit::Plain) invalid(name, "expected a plain number");
    std::istringstream in(v.get<std::string>());
    double x = 0.0;
    std::string unit, rest;
    if (!(in >> x >> unit) || (in >> rest)) invalid(name, "expected '<number> <unit>'");
    return convert(f.unit, x, unit, name, kb_bits);
  }
  invalid(name, "expected a number or a unit string");
}

}  // namespace

void validate(const ScenarioConfig& c) {
  auto positive = [](const char* name, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) invalid(name, "must be > 0");
  };
  auto nonneg = [](const char* name, double v) {
    if (!(v >= 0.0) || !std::isfinite(v)) invalid(name, "must be >= 0");
  };
  auto range = [&](const char* lo_name, double lo, const char* hi_name, double hi) {
    positive(lo_name, lo);
    if (hi < lo) invalid(hi_name, std::string("must be >= ") + lo_name);
  };
  if (c.K < 0) invalid("K", "must be >= 0");
  if (c.L < 0) invalid("L", "must be >= 0");
  if (c.M < 0) invalid("M", "must be >= 0");
  if (c.N < 0) invalid("N", "must be >= 0");
  if (c.K > 0 && c.M + c.N < 1) invalid("M", "ground users need at least one BS or satellite");
  if (c.L > 0 && c.N < 1) invalid("N", "space users need at least one satellite");
  if (c.nt_g < 1) invalid("nt_g", "must be >= 1");
  if (c.nt_s < 1) invalid("nt_s", "must be >= 1");
  positive("B1", c.B1);
  positive("B2", c.B2);
  positive("B3", c.B3);
  positive("noise1", c.noise1);
  positive("noise2", c.noise2);
  positive("noise3", c.noise3);
  positive("p_max", c.p_max);
  positive("q_max", c.q_max);
  positive("data_unit_bits", c.data_unit_bits);
  range("gue_d_min", c.gue_d_min, "gue_d_max", c.gue_d_max);
  range("gue_c_min", c.gue_c_min, "gue_c_max", c.gue_c_max);
  range("sue_d_min", c.sue_d_min, "sue_d_max", c.sue_d_max);
  range("sue_c_min", c.sue_c_min, "sue_c_max", c.sue_c_max);
  positive("z_g", c.z_g);
  positive("z_s", c.z_s);
  positive("f_gro", c.f_gro);
  positive("f_sat", c.f_sat);
  nonneg("rho_g", c.rho_g);
  nonneg("rho_s", c.rho_s);
  positive("tau_gro", c.tau_gro);
  positive("tau_sat", c.tau_sat);
  positive("carrier_hz", c.carrier_hz);
  positive("kappa", c.kappa);
  positive("temp_k", c.temp_k);
  if (!std::isfinite(c.g_over_t_db)) invalid("g_over_t_db", "not finite");
  if (!std::isfinite(c.rain_mu_db)) invalid("rain_mu_db", "not finite");
  nonneg("rain_sigma2_db", c.rain_sigma2_db);
  positive("eps3db_rad", c.eps3db_rad);
  if (c.eps3db_rad >= kPi / 2) invalid("eps3db_rad", "must be < pi/2");
  positive("b_max", c.b_max);
  nonneg("boresight_max_frac", c.boresight_max_frac);
  nonneg("boresight_perturb_rad", c.boresight_perturb_rad);
  positive("wavelength", c.wavelength);
  positive("d_t", c.d_t);
  positive("d_r", c.d_r);
  nonneg("e_t", c.e_t);
  nonneg("e_r", c.e_r);
  positive("eta_t", c.eta_t);
  positive("eta_r", c.eta_r);
  if (c.eta_t > 1.0) invalid("eta_t", "must be <= 1");
  if (c.eta_r > 1.0) invalid("eta_r", "must be <= 1");
  positive("light_speed", c.light_speed);
  range("gue_bs_km_min", c.gue_bs_km_min, "gue_bs_km_max", c.gue_bs_km_max);
  range("gue_sat_km_min", c.gue_sat_km_min, "gue_sat_km_max", c.gue_sat_km_max);
  range("sue_sat_km_min", c.sue_sat_km_min, "sue_sat_km_max", c.sue_sat_km_max);
  if (c.walker_planes < 1) invalid("walker_planes", "must be >= 1");
  if (c.walker_sats_per_plane < 1) invalid("walker_sats_per_plane", "must be >= 1");
  if (c.walker_phase < 0 || c.walker_phase >= c.walker_planes) invalid("walker_phase", "must be in [0, planes)");
  positive("walker_altitude_km", c.walker_altitude_km);
  nonneg("ground_spread_km", c.ground_spread_km);
  if (c.ao_max_iter < 1) invalid("ao_max_iter", "must be >= 1");
  positive("ao_tol", c.ao_tol);
  if (c.sca_max_outer < 1) invalid("sca_max_outer", "must be >= 1");
  positive("sca_tol", c.sca_tol);
  if (c.hco_swarm < 1) invalid("hco_swarm", "must be >= 1");
  if (c.hco_iters < 0) invalid("hco_iters", "must be >= 0");
  nonneg("hco_inertia", c.hco_inertia);
  nonneg("hco_c1", c.hco_c1);
  nonneg("hco_c2", c.hco_c2);
  positive("hco_penalty_factor", c.hco_penalty_factor);
  if (c.hco_patience < 1) invalid("hco_patience", "must be >= 1");
}

ScenarioConfig parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "top level must be a JSON object");

  ScenarioConfig cfg;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    bool known = it.key() == "seed";
    for (const auto& f : fields()) known = known || it.key() == f.name;
    if (!known) invalid(it.key(), "unknown key");
  }
  // KB strings depend on the data unit, so it is read first.
  for (const auto& f : fields()) {
    if (std::string(f.name) == "data_unit_bits" && doc.contains(f.name)) f.set(cfg, parse_value(f, doc[f.name], 0.0));
  }
  for (const auto& f : fields()) {
    if (doc.contains(f.name)) f.set(cfg, parse_value(f, doc[f.name], cfg.data_unit_bits));
  }
  if (doc.contains("seed")) {
    const auto& s = doc["seed"];
    if (!s.is_number_unsigned()) invalid("seed", "expected a non-negative integer");
    cfg.seed = s.get<std::uint64_t>();
  }
  validate(cfg);
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

namespace {

const Field& field_named(const std::string& key) {
  for (const auto& f : fields())
    if (key == f.name) return f;
  invalid(key, "unknown key");
}

}  // namespace

double get_field(const ScenarioConfig& cfg, const std::string& key) { return field_named(key).get(cfg); }

void set_field(ScenarioConfig& cfg, const std::string& key, double value) { field_named(key).set(cfg, value); }

std::string to_json(const ScenarioConfig& cfg) {
  nlohmann::ordered_json out;
  for (const auto& f : fields()) {
    const double v = f.get(cfg);
    if (f.unit == Unit::Count) {
      out[f.name] = static_cast<long long>(v);
    } else if (f.unit == Unit::Flag) {
      out[f.name] = v > 0.5;
    } else if (f.unit == Unit::Text) {
      if (std::string(f.name) == "geometry_mode") out[f.name] = v > 0.5 ? "walker" : "direct";
      else out[f.name] = v > 0.5 ? "unit" : "literal";
    } else {
      out[f.name] = v;
    }
  }
  out["seed"] = cfg.seed;
  return out.dump(2);
}

}  // namespace stcomp
