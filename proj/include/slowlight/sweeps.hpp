#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "slowlight/config.hpp"
#include "slowlight/resonance.hpp"

namespace slowlight {

enum class SweepAxis { one_photon_detuning, total_power };

struct SweepSpec {
  SweepAxis axis;
  double start = 0.0;
  double stop = 0.0;
  int n_points = 2;
  bool log_spacing = false;
};

// Monotone grid; throws for start >= stop, n < 2, or log spacing with
// a non-positive start.
Eigen::ArrayXd sweep_grid(const SweepSpec& spec);

// Worker count for data-parallel sweeps: min(n_points, SIM_THREADS if set,
// hardware concurrency otherwise).
int sweep_workers(int n_points);

struct DetuningSweepRow {
  double one_photon_detuning;  // rad/s
  std::optional<double> tau;   // s; empty for dispersive lineshapes
  ShapeKind kind;
};

// Per detuning: locate the dominant feature, classify the lineshape, and
// report the dispersion group delay at the located extremum. Dispersive
// points carry no delay, reproducing the measurement gap.
std::vector<DetuningSweepRow> detuning_sweep(const SimConfig& cfg,
                                             double power_w,
                                             const SweepSpec& spec);

struct PowerSweepRow {
  double power_w;
  double tau_analytic;  // s
  double tau_pulse;     // s, Gaussian-pulse peak delay at the located extremum
};

std::vector<PowerSweepRow> power_sweep(const SimConfig& cfg, double delta1,
                                       const SweepSpec& spec);

struct ResonanceStatsRow {
  double power_w;
  double width_rate;                      // dark-line width rate (rad/s)
  std::optional<double> width_extracted;  // FWHM from the simulated spectrum (rad/s)
  std::optional<double> amplitude;        // signed transmission contrast
};

std::vector<ResonanceStatsRow> resonance_stats(const SimConfig& cfg,
                                               double delta1,
                                               const SweepSpec& spec);

}  // namespace slowlight
