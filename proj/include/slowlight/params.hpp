#pragma once

namespace slowlight {

// Rates are angular (rad/s) throughout.
struct AtomParams {
  double wavelength;        // probe transition wavelength (m)
  double radiative_rate;    // excited-state population decay (rad/s)
  double optical_decay;     // total optical-coherence decay, >= radiative_rate/2 (rad/s)
  double ground_decay;      // ground-state coherence decay (rad/s)
  double doppler_width;     // Doppler-broadened line width, diagnostics only (rad/s)

  void validate() const;
};

struct CellParams {
  double density;  // atomic number density (m^-3)
  double length;   // cell length (m)

  void validate() const;
};

struct FieldParams {
  double drive_rabi;            // drive Rabi frequency (rad/s), half-Rabi convention
  double one_photon_detuning;   // laser offset from the optical transition (rad/s)
  double two_photon_detuning;   // Raman offset of the probe-drive difference (rad/s)
  double probe_power_fraction;  // probe/total optical power, in (0, 0.5)

  void validate() const;
};

// Maps the experiment's power axis onto the model's Rabi frequency.
struct Calibration {
  double k_rabi;       // Rabi frequency per sqrt(optical power) (rad s^-1 W^-1/2)
  double gamma_0_fit;  // fitted ground-state decoherence (rad/s)

  void validate() const;
};

struct SystemParams {
  AtomParams atom;
  CellParams cell;
  FieldParams field;

  void validate() const;
};

// Cell and beam values of the reference experiment: lambda = 795 nm,
// L = 2.5 cm, N = 4.7e17 m^-3, probe fraction 7%. Decay rates are
// documented placeholders (Rb D1 natural width; pressure-broadened optical
// width at 30 Torr Ne; ground decoherence consistent with the observed
// kHz-scale dark line) and are refined by config or calibration.
SystemParams default_params();

// Placeholder k_rabi pending calibration, ground decay mirroring default_params().
Calibration default_calibration();

// Omega = k_rabi * sqrt(power); throws std::domain_error for negative power.
double power_to_rabi(double power_w, const Calibration& cal);

// Probe Rabi amplitude: alpha = sqrt(probe_power_fraction) * drive Rabi,
// so alpha^2/Omega^2 equals the probe power fraction.
double probe_rabi(const SystemParams& p);

}  // namespace slowlight
