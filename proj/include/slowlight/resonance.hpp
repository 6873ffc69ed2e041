#pragma once

#include <Eigen/Dense>

#include "slowlight/params.hpp"

namespace slowlight {

// Sampled probe transmission vs two-photon detuning. Transmission is
// exp(-a(d) L) so the far-detuned baseline equals the wing absorption of
// the one-photon line; phase is the accumulated optical phase relative to
// vacuum, (omega/(2c)) Re chi L.
struct Spectrum {
  Eigen::ArrayXd detuning;      // monotone two-photon detunings (rad/s)
  Eigen::ArrayXd transmission;  // in [0, 1]
  Eigen::ArrayXd phase;         // rad
  Eigen::ArrayXcd chi;
};

enum class ShapeKind { transmission, absorption, dispersive };

struct ResonanceShape {
  double center;     // rad/s
  double fwhm;       // rad/s, by half-contrast crossings
  double amplitude;  // peak-to-baseline transmission contrast, signed
  double asymmetry;  // |antisymmetric residual| / |symmetric part|
  ShapeKind kind;
  double lorentz_fwhm;  // Lorentzian-fit width for symmetric shapes, NaN otherwise
};

enum class DelayMethod {
  closed_form,
  slow_asymptote,
  fast_asymptote,
  numeric_dispersion,
  pulse_peak,
};

struct DelayResult {
  double tau;             // group delay relative to vacuum transit (s, signed)
  DelayMethod method;
  double group_index;     // 1 + c tau / L
  double group_velocity;  // L / tau for tau != 0, c for tau = 0
};

DelayResult make_delay_result(double tau, DelayMethod method, double cell_length);

// Dark-feature helpers (drive power broadening and light shift of the
// two-photon resonance on the one-photon wing).
double power_broadening_rate(const SystemParams& p);  // gamma W / (gamma^2 + D^2)
double light_shift(const SystemParams& p);            // D W / (gamma^2 + D^2)

// Grid spanning the two-photon feature: +-(halfwidths * feature half-width)
// around zero, widened to include the shifted extremum.
Eigen::ArrayXd feature_scan_grid(const SystemParams& p, int n_points = 2001,
                                 double halfwidths = 25.0);

Spectrum transmission_spectrum(const SystemParams& p, const Eigen::ArrayXd& grid);

// Two-photon detuning of the dominant transmission feature (max |T - baseline|),
// parabolic sub-grid refinement. All resonance-referenced quantities use this,
// never a hard-coded d = 0.
double locate_extremum(const SystemParams& p);

// Group delay from the dispersion: tau = (L/c)(n_g - 1) with
// n_g = n + omega dn/domega, central difference with step
// min(gamma_0, feature fwhm)/50.
DelayResult group_delay_numeric(const SystemParams& p, double delta);

// Full closed-form delay (verbatim formula evaluation):
//   tau = (3/(8 pi)) N lambda^2 L gamma_r * (gamma^2 + D^2)/(2 g0 D^2 + gamma W)
//         * [gamma W^2 - 2 W (D^2/(gamma^2 + D^2)) (g0 D^2 + gamma W)]
//         / [g0^2 D^2 (gamma^2 + D^2) + gamma^2 W^2],  W = Omega^2.
// Degenerate (throws) only for W = 0 with D = 0 or g0 = 0.
DelayResult delay_analytic(const SystemParams& p);

// Slow-light asymptote tau = (3/(8 pi)) N lambda^2 L gamma_r / W. Warns on
// stderr when the EIT validity conditions are violated.
DelayResult delay_slow_asymptote(const SystemParams& p);

// Fast-light asymptote tau = -(3/(8 pi)) N lambda^2 L gamma_r W / (g0^2 D^2),
// for D^2 >> (gamma/g0) W; throws for D = 0.
DelayResult delay_fast_asymptote(const SystemParams& p);

struct EitWidth {
  double value;       // rad/s
  bool out_of_model;  // set when D = 0, where the expression does not apply
};

// Dark-resonance width rate g0 + gamma^2 W^2 / (2 g0 D^4). This is the
// half-width-type rate of the dark line (the zero-power feature is a
// Lorentzian of HWHM exactly g0); the corresponding FWHM is twice it.
EitWidth eit_width(const SystemParams& p);

// Locate the global extremum vs the edge baseline, half-contrast FWHM with
// linear interpolation, antisymmetric/symmetric decomposition about the
// extremum. kind = dispersive iff asymmetry > threshold.
ResonanceShape characterize_resonance(const Spectrum& spec,
                                      double dispersive_threshold = 1.0);

// Accumulated probe phase across the resonance, tau * width.
double phase_budget(double tau, double width);

double group_index_from_delay(double tau, double cell_length);

}  // namespace slowlight
