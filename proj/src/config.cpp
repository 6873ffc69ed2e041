#include "slowlight/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "slowlight/constants.hpp"
#include "slowlight/errors.hpp"

namespace slowlight {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& text) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': not a number: '" + text + "'");
  }
  if (pos != text.size())
    throw ConfigError("config key '" + key + "': trailing characters in '" + text + "'");
  if (!std::isfinite(v))
    throw ConfigError("config key '" + key + "': value must be finite");
  return v;
}

}  // namespace

SimConfig default_config() {
  SimConfig cfg;
  cfg.params = default_params();
  cfg.cal = default_calibration();
  cfg.total_power_w = 400e-6;
  cfg.params.field.drive_rabi = power_to_rabi(cfg.total_power_w, cfg.cal);
  return cfg;
}

SimConfig parse_config(std::istream& in) {
  std::map<std::string, double> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty key or value");
    if (kv.count(key))
      throw ConfigError("config: duplicate key '" + key + "'");
    kv[key] = parse_number(key, value);
  }

  SimConfig cfg = default_config();
  auto take = [&kv](const char* key, double* out, double scale) {
    auto it = kv.find(key);
    if (it != kv.end()) {
      *out = it->second * scale;
      kv.erase(it);
    }
  };

  take("lambda_nm", &cfg.params.atom.wavelength, 1e-9);
  take("cell_length_cm", &cfg.params.cell.length, 1e-2);
  take("density_cm3", &cfg.params.cell.density, 1e6);
  take("gamma_r_hz", &cfg.params.atom.radiative_rate, two_pi);
  take("gamma_hz", &cfg.params.atom.optical_decay, two_pi);
  take("gamma0_hz", &cfg.params.atom.ground_decay, two_pi);
  take("doppler_width_hz", &cfg.params.atom.doppler_width, two_pi);
  take("probe_fraction", &cfg.params.field.probe_power_fraction, 1.0);
  take("k_rabi", &cfg.cal.k_rabi, 1.0);
  take("total_power_uw", &cfg.total_power_w, 1e-6);
  take("delta_one_photon_ghz", &cfg.params.field.one_photon_detuning, two_pi * 1e9);

  if (!kv.empty())
    throw ConfigError("config: unknown key '" + kv.begin()->first + "'");

  cfg.cal.gamma_0_fit = cfg.params.atom.ground_decay;
  if (cfg.total_power_w < 0) throw ConfigError("total_power_uw must be nonnegative");
  cfg.params.field.drive_rabi = power_to_rabi(cfg.total_power_w, cfg.cal);
  try {
    cfg.params.validate();
    cfg.cal.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_config(in);
}

void write_config(const SimConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write config file: " + path);
  out.precision(12);
  out << "lambda_nm = " << cfg.params.atom.wavelength / 1e-9 << "\n"
      << "cell_length_cm = " << cfg.params.cell.length / 1e-2 << "\n"
      << "density_cm3 = " << cfg.params.cell.density / 1e6 << "\n"
      << "gamma_r_hz = " << cfg.params.atom.radiative_rate / two_pi << "\n"
      << "gamma_hz = " << cfg.params.atom.optical_decay / two_pi << "\n"
      << "gamma0_hz = " << cfg.params.atom.ground_decay / two_pi << "\n"
      << "doppler_width_hz = " << cfg.params.atom.doppler_width / two_pi << "\n"
      << "probe_fraction = " << cfg.params.field.probe_power_fraction << "\n"
      << "k_rabi = " << cfg.cal.k_rabi << "\n"
      << "total_power_uw = " << cfg.total_power_w / 1e-6 << "\n"
      << "delta_one_photon_ghz = "
      << cfg.params.field.one_photon_detuning / (two_pi * 1e9) << "\n";
  if (!out) throw ConfigError("failed writing config file: " + path);
}

void apply_calibration(SimConfig& cfg, const Calibration& cal) {
  cal.validate();
  cfg.cal = cal;
  cfg.params.atom.ground_decay = cal.gamma_0_fit;
  cfg.params.field.drive_rabi = power_to_rabi(cfg.total_power_w, cfg.cal);
}

void set_total_power(SimConfig& cfg, double power_w) {
  if (power_w < 0) throw ConfigError("total power must be nonnegative");
  cfg.total_power_w = power_w;
  cfg.params.field.drive_rabi = power_to_rabi(power_w, cfg.cal);
}

}  // namespace slowlight
