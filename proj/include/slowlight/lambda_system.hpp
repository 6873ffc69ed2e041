#pragma once

#include <Eigen/Dense>
#include <complex>

#include "slowlight/params.hpp"

namespace slowlight {

// Three-level Lambda system in the rotating frame, basis
//   |0> = a (excited), |1> = b (probe ground), |2> = c (drive ground).
//
// Convention (used everywhere; fixed by the requirement that the zero-
// detuning group delay reduces to the slow-light asymptote and the
// far-detuned delay matches the fast-light asymptote including sign):
//   H = -Dp|a><a| - d|c><c| - (alpha|a><b| + Omega|a><c| + h.c.)
// with half-Rabi amplitudes alpha (probe) and Omega (drive), one-photon
// detuning D, two-photon detuning d, Dp = D + d. Decay model: excited
// population decays at gamma_r branching 1/2 : 1/2 into each ground state;
// optical coherences decay at gamma (extra dephasing on top of gamma_r/2);
// the ground coherence decays at gamma_0 and ground populations exchange
// toward an equal mixture at gamma_0.

using DensityMatrix = Eigen::Matrix3cd;
using Matrix9cd = Eigen::Matrix<std::complex<double>, 9, 9>;
using Vector9cd = Eigen::Matrix<std::complex<double>, 9, 1>;

// Generator of the master equation acting on rho vectorized row-major,
// vec(rho)[3*i + j] = rho(i, j).
Matrix9cd liouvillian(const SystemParams& p, double probe_rabi);

// Unique steady state with unit trace, by dense solve of the 9x9 system
// with the rho_aa row replaced by the trace constraint. Throws NumericError
// with a condition estimate when the steady state is not unique.
DensityMatrix steady_state(const SystemParams& p, double probe_rabi);

// Max deviation from a Hermitian, unit-trace, nonnegative-diagonal matrix.
double physicality_defect(const DensityMatrix& rho);

// First-order-in-probe coherence rho_ab / alpha:
//   i*Gcb / (Gab*Gcb + |Omega|^2),  Gcb = gamma_0 - i d,  Gab = gamma - i (D + d).
// Valid whenever Omega > 0 or gamma*gamma_0 > 0.
std::complex<double> weak_probe_coherence(const SystemParams& p, double delta);

struct SusceptibilityPoint {
  double two_photon_detuning;  // rad/s
  std::complex<double> chi;    // dimensionless; Im(chi) >= 0 (passive medium)
};

// chi = (3/(8 pi^2)) N lambda^3 gamma_r * weak_probe_coherence. The prefactor
// makes the zero-detuning group delay reproduce the slow-light asymptote
// (3/(8 pi)) N lambda^2 L gamma_r / |Omega|^2 exactly in the EIT limit.
SusceptibilityPoint susceptibility(const SystemParams& p, double delta);

double susceptibility_prefactor(const SystemParams& p);  // rad/s

// Probe carrier angular frequency 2 pi c / lambda.
double optical_frequency(const SystemParams& p);

// Intensity absorption coefficient (omega/c) Im chi, 1/m.
double absorption_coefficient(const SystemParams& p, std::complex<double> chi);

// Refractive index 1 + Re(chi)/2.
double refractive_index(std::complex<double> chi);

}  // namespace slowlight
