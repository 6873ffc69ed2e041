#include "slowlight/params.hpp"

#include <cmath>
#include <stdexcept>

#include "slowlight/constants.hpp"

namespace slowlight {
namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

void AtomParams::validate() const {
  require(wavelength > 0, "wavelength must be positive");
  require(radiative_rate > 0, "radiative_rate must be positive");
  require(optical_decay > 0, "optical_decay must be positive");
  require(ground_decay > 0, "ground_decay must be positive");
  require(doppler_width > 0, "doppler_width must be positive");
  require(optical_decay >= radiative_rate / 2,
          "optical_decay must be at least radiative_rate/2");
  require(ground_decay < optical_decay,
          "ground_decay must be smaller than optical_decay");
}

void CellParams::validate() const {
  require(density >= 0, "density must be nonnegative");
  require(length > 0, "length must be positive");
}

void FieldParams::validate() const {
  require(drive_rabi >= 0, "drive Rabi frequency must be nonnegative");
  require(probe_power_fraction > 0 && probe_power_fraction < 0.5,
          "probe_power_fraction must lie in (0, 0.5)");
}

void Calibration::validate() const {
  require(k_rabi > 0, "k_rabi must be positive");
  require(gamma_0_fit > 0, "gamma_0_fit must be positive");
}

void SystemParams::validate() const {
  atom.validate();
  cell.validate();
  field.validate();
}

SystemParams default_params() {
  SystemParams p;
  p.atom.wavelength = 795e-9;
  p.atom.radiative_rate = two_pi * 5.75e6;
  p.atom.optical_decay = two_pi * 100e6;
  p.atom.ground_decay = two_pi * 1e3;
  p.atom.doppler_width = two_pi * 500e6;
  p.cell.density = 4.7e17;
  p.cell.length = 0.025;
  p.field.drive_rabi = 0.0;
  p.field.one_photon_detuning = 0.0;
  p.field.two_photon_detuning = 0.0;
  p.field.probe_power_fraction = 0.07;
  return p;
}

Calibration default_calibration() {
  Calibration cal;
  cal.k_rabi = 1e9;
  cal.gamma_0_fit = default_params().atom.ground_decay;
  return cal;
}

double power_to_rabi(double power_w, const Calibration& cal) {
  cal.validate();
  if (power_w < 0) throw std::domain_error("optical power must be nonnegative");
  return cal.k_rabi * std::sqrt(power_w);
}

double probe_rabi(const SystemParams& p) {
  return std::sqrt(p.field.probe_power_fraction) * p.field.drive_rabi;
}

}  // namespace slowlight
