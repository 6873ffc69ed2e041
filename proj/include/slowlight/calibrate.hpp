#pragma once

#include <vector>

#include "slowlight/params.hpp"

namespace slowlight {

enum class AnchorObservable { delay, width };

// One calibration target: an observable at given total power and one-photon
// detuning, with the acceptance tolerance on its relative residual.
struct Anchor {
  AnchorObservable observable;
  double power_w;
  double one_photon_detuning;  // rad/s
  double target;               // s for delays, rad/s for widths
  double tolerance;            // relative
};

using AnchorSet = std::vector<Anchor>;

// The reference measurements: +370 us delay at 145 uW on resonance, -300 us
// at 700 uW and 1.45 GHz detuning, 2.5 kHz width at 400 uW and 1.45 GHz.
AnchorSet reference_anchor_set();

struct AnchorReport {
  Anchor anchor;
  double predicted = 0.0;
  double residual = 0.0;  // predicted/target - 1
  bool within_tolerance = false;
};

struct CalibrationResult {
  Calibration calibration;
  std::vector<AnchorReport> anchors;
  double cost = 0.0;
  bool converged = false;
  bool all_within_tolerance = false;
};

// Model prediction of an anchor observable (analytic delay or width rate)
// for given calibration constants.
double predict_anchor(const Anchor& a, const SystemParams& base,
                      const Calibration& cal);

// Fit (k_rabi, gamma_0) by minimizing the sum of squared tolerance-weighted
// relative residuals: coarse 50x50 log-grid scan, then damped least squares
// in log parameters. Requires at least two anchors including a delay anchor.
CalibrationResult calibrate_from_anchors(const AnchorSet& anchors,
                                         const SystemParams& initial);

}  // namespace slowlight
