#pragma once

#include <iosfwd>
#include <string>

#include "slowlight/params.hpp"

namespace slowlight {

// A loaded run configuration. field.drive_rabi is derived from
// k_rabi * sqrt(total_power) at load time.
struct SimConfig {
  SystemParams params;
  Calibration cal;
  double total_power_w = 0.0;
};

SimConfig default_config();

// Flat "key = value" text format. Recognized keys (all optional, defaults
// above): lambda_nm, cell_length_cm, density_cm3, gamma_r_hz, gamma_hz,
// gamma0_hz, doppler_width_hz, probe_fraction, k_rabi, total_power_uw,
// delta_one_photon_ghz. Ordinary-frequency keys are converted to rad/s.
// Unknown keys are a hard error. '#' starts a comment.
SimConfig parse_config(std::istream& in);
SimConfig load_config(const std::string& path);
void write_config(const SimConfig& cfg, const std::string& path);

// Install calibrated (k_rabi, gamma_0) and recompute the drive Rabi.
void apply_calibration(SimConfig& cfg, const Calibration& cal);

// Set the total power and recompute the drive Rabi.
void set_total_power(SimConfig& cfg, double power_w);

}  // namespace slowlight
