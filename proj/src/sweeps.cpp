#include "slowlight/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "slowlight/errors.hpp"
#include "slowlight/lambda_system.hpp"
#include "slowlight/pulse.hpp"

namespace slowlight {
namespace {

// Data-parallel map with deterministic, index-addressed results.
void parallel_for(int n, int workers, const std::function<void(int)>& body) {
  workers = std::max(1, std::min(workers, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(std::size_t(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += workers) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

SystemParams at_power(const SimConfig& cfg, double power_w, double delta1) {
  SystemParams p = cfg.params;
  p.field.one_photon_detuning = delta1;
  p.field.drive_rabi = power_to_rabi(power_w, cfg.cal);
  return p;
}

// Pulse-peak delay of the default 1 ms Gaussian probe tuned to the feature
// extremum (the measurement procedure of the reference experiment).
double pulse_delay(const SystemParams& base) {
  SystemParams p = base;
  p.field.two_photon_detuning = locate_extremum(p);
  const PulseEnvelope in = gaussian_pulse(1e-3, 8e-3, 16e-3, 4096);
  const PulseEnvelope out = propagate(in, p);
  return measure_delay(in, out, p.cell).tau;
}

}  // namespace

Eigen::ArrayXd sweep_grid(const SweepSpec& spec) {
  if (!(spec.start < spec.stop))
    throw std::invalid_argument("sweep start must be below stop");
  if (spec.n_points < 2) throw std::invalid_argument("sweep needs >= 2 points");
  if (spec.log_spacing && spec.start <= 0.0)
    throw std::invalid_argument("log-spaced sweep needs a positive start");
  if (spec.log_spacing) {
    Eigen::ArrayXd g = Eigen::ArrayXd::LinSpaced(
        spec.n_points, std::log(spec.start), std::log(spec.stop));
    return g.exp();
  }
  return Eigen::ArrayXd::LinSpaced(spec.n_points, spec.start, spec.stop);
}

int sweep_workers(int n_points) {
  int limit = int(std::thread::hardware_concurrency());
  if (limit <= 0) limit = 1;
  if (const char* env = std::getenv("SIM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) limit = int(v);
  }
  return std::max(1, std::min(limit, n_points));
}

std::vector<DetuningSweepRow> detuning_sweep(const SimConfig& cfg, double power_w,
                                             const SweepSpec& spec) {
  const Eigen::ArrayXd grid = sweep_grid(spec);
  const int n = int(grid.size());
  std::vector<DetuningSweepRow> rows(static_cast<std::size_t>(n));
  parallel_for(n, sweep_workers(n), [&](int i) {
    const SystemParams p = at_power(cfg, power_w, grid(i));
    DetuningSweepRow row;
    row.one_photon_detuning = grid(i);
    try {
      const Spectrum s = transmission_spectrum(p, feature_scan_grid(p));
      const ResonanceShape shape = characterize_resonance(s);
      if (shape.kind == ShapeKind::dispersive) {
        row.kind = ShapeKind::dispersive;
      } else {
        row.kind = shape.kind;
        row.tau = group_delay_numeric(p, shape.center).tau;
      }
    } catch (const NumericError&) {
      // featureless spectrum (empty cell, zero drive): flat transmission
      row.kind = ShapeKind::transmission;
      row.tau = group_delay_numeric(p, 0.0).tau;
    }
    rows[std::size_t(i)] = row;
  });
  return rows;
}

std::vector<PowerSweepRow> power_sweep(const SimConfig& cfg, double delta1,
                                       const SweepSpec& spec) {
  const Eigen::ArrayXd grid = sweep_grid(spec);
  const int n = int(grid.size());
  std::vector<PowerSweepRow> rows(static_cast<std::size_t>(n));
  parallel_for(n, sweep_workers(n), [&](int i) {
    PowerSweepRow row;
    row.power_w = grid(i);
    const SystemParams p = at_power(cfg, grid(i), delta1);
    if (p.field.drive_rabi == 0.0) {
      // no drive, no dark resonance: zero relative delay by convention
      row.tau_analytic = 0.0;
      row.tau_pulse = 0.0;
    } else {
      row.tau_analytic = delay_analytic(p).tau;
      row.tau_pulse = pulse_delay(p);
    }
    rows[std::size_t(i)] = row;
  });
  return rows;
}

std::vector<ResonanceStatsRow> resonance_stats(const SimConfig& cfg, double delta1,
                                               const SweepSpec& spec) {
  const Eigen::ArrayXd grid = sweep_grid(spec);
  const int n = int(grid.size());
  std::vector<ResonanceStatsRow> rows(static_cast<std::size_t>(n));
  parallel_for(n, sweep_workers(n), [&](int i) {
    const SystemParams p = at_power(cfg, grid(i), delta1);
    ResonanceStatsRow row;
    row.power_w = grid(i);
    row.width_rate = eit_width(p).value;
    try {
      const Spectrum s = transmission_spectrum(p, feature_scan_grid(p));
      const ResonanceShape shape = characterize_resonance(s);
      row.width_extracted = shape.fwhm;
      row.amplitude = shape.amplitude;
    } catch (const NumericError&) {
      // feature below the contrast floor at this power
    }
    rows[std::size_t(i)] = row;
  });
  return rows;
}

}  // namespace slowlight
