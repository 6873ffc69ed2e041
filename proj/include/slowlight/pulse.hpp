#pragma once

#include <Eigen/Dense>
#include <string>

#include "slowlight/params.hpp"
#include "slowlight/resonance.hpp"

namespace slowlight {

// Uniformly sampled complex probe envelope. Library constructors keep the
// sample count a power of two (>= 64) and the envelope below 1e-6 of its
// peak at both record edges so spectral propagation cannot wrap around.
struct PulseEnvelope {
  double start_time = 0.0;      // s
  double sample_interval = 0.0; // s
  Eigen::ArrayXcd samples;

  double time(Eigen::Index i) const { return start_time + sample_interval * double(i); }
  Eigen::Index size() const { return samples.size(); }
};

struct GaussianFit {
  double peak_time;     // s
  double fwhm;          // s
  double amplitude;
  double baseline;
  double rms_residual;  // relative to amplitude
};

// exp(-4 ln2 (t - t_center)^2 / fwhm^2) sampled on [0, window).
// Requires window >= 8 fwhm and a power-of-two n_samples.
PulseEnvelope gaussian_pulse(double fwhm, double t_center, double window,
                             int n_samples);

// Angular frequency grid of the envelope spectrum (fft bin ordering),
// offsets from the carrier.
Eigen::ArrayXd spectral_grid(const PulseEnvelope& pulse);

// Single-pass medium response for envelope components at two-photon detuning
// carrier + d: H(d) = exp(i (omega/(2c)) chi(d_c + d) L). The vacuum transit
// phase is not included, so measured delays are relative to a no-atoms
// reference pulse.
Eigen::ArrayXcd transfer_function(const SystemParams& p,
                                  const Eigen::ArrayXd& dgrid);

// Multiply the envelope spectrum by H and synthesize back. The spectral
// convention is fixed by the shift theorem: H = exp(i d tau0) delays the
// envelope by exactly tau0.
PulseEnvelope apply_transfer(const PulseEnvelope& pulse,
                             const Eigen::ArrayXcd& transfer);

// Propagate through the medium at the carrier two-photon detuning stored in
// p.field. Warns on stderr when the pulse spectral width exceeds the
// resonance width; throws NumericError if the output leaks into the record
// edges (> 1e-3 of its peak).
PulseEnvelope propagate(const PulseEnvelope& pulse, const SystemParams& p);

// Damped least-squares fit of baseline + A exp(-4 ln2 (t-t0)^2/w^2) to
// |samples|, initialized from the discrete peak and half-max crossings.
GaussianFit fit_gaussian(const PulseEnvelope& pulse);

// Relative pulse-peak delay tau = t_peak(out) - t_peak(in).
DelayResult measure_delay(const PulseEnvelope& input, const PulseEnvelope& output,
                          const CellParams& cell);

double pulse_energy(const PulseEnvelope& pulse);

// Two-column CSV (time_s, amplitude) of |samples| for external plotting.
void write_envelope_csv(const PulseEnvelope& pulse, const std::string& path);
PulseEnvelope read_envelope_csv(const std::string& path);

}  // namespace slowlight
