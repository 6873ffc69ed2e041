#include "slowlight/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <optional>

#include "slowlight/calibrate.hpp"
#include "slowlight/config.hpp"
#include "slowlight/constants.hpp"
#include "slowlight/csv.hpp"
#include "slowlight/errors.hpp"
#include "slowlight/lambda_system.hpp"
#include "slowlight/pulse.hpp"
#include "slowlight/resonance.hpp"
#include "slowlight/sweeps.hpp"

namespace slowlight {
namespace {

const char* kind_name(ShapeKind k) {
  switch (k) {
    case ShapeKind::transmission: return "transmission";
    case ShapeKind::absorption: return "absorption";
    case ShapeKind::dispersive: return "dispersive";
  }
  return "?";
}

struct CommonOpts {
  std::string config_path;
  std::string out_path = "-";
  double delta_ghz = 0.0;
  bool delta_set = false;
  double power_uw = 0.0;
  bool power_set = false;
};

void add_common(CLI::App* cmd, CommonOpts* o, bool with_point_opts = true) {
  cmd->add_option("--config", o->config_path, "parameter file (key = value)");
  cmd->add_option("--out", o->out_path, "output CSV path, '-' for stdout");
  if (with_point_opts) {
    cmd->add_option("--delta-ghz", o->delta_ghz, "one-photon detuning (GHz)")
        ->each([o](const std::string&) { o->delta_set = true; });
    cmd->add_option("--power-uw", o->power_uw, "total optical power (uW)")
        ->each([o](const std::string&) { o->power_set = true; });
  }
}

SimConfig resolve_config(const CommonOpts& o) {
  SimConfig cfg = o.config_path.empty() ? default_config() : load_config(o.config_path);
  if (o.power_set) set_total_power(cfg, o.power_uw * 1e-6);
  if (o.delta_set)
    cfg.params.field.one_photon_detuning = two_pi * 1e9 * o.delta_ghz;
  return cfg;
}

int cmd_spectrum(const CommonOpts& o, int points, double span_khz) {
  const SimConfig cfg = resolve_config(o);
  Eigen::ArrayXd grid;
  if (span_khz > 0) {
    const double half = pi * span_khz * 1e3;  // full span span_khz in ordinary kHz
    grid = Eigen::ArrayXd::LinSpaced(points, -half, half);
  } else {
    grid = feature_scan_grid(cfg.params, points);
  }
  const Spectrum s = transmission_spectrum(cfg.params, grid);

  CsvWriter w(o.out_path);
  echo_config(w, cfg);
  w.header({"delta_hz", "transmission", "phase_rad"});
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    w.row({format_sig9(s.detuning(i) / two_pi), format_sig9(s.transmission(i)),
           format_sig9(s.phase(i))});
  return 0;
}

int cmd_pulse(const CommonOpts& o, double fwhm_ms, int points) {
  SimConfig cfg = resolve_config(o);
  const double fwhm = fwhm_ms * 1e-3;
  const double window = 16.0 * fwhm;
  cfg.params.field.two_photon_detuning = locate_extremum(cfg.params);

  const PulseEnvelope in = gaussian_pulse(fwhm, window / 2.0, window, points);
  const PulseEnvelope out = propagate(in, cfg.params);
  const GaussianFit fit_in = fit_gaussian(in);
  const GaussianFit fit_out = fit_gaussian(out);
  const DelayResult pulse_tau = measure_delay(in, out, cfg.params.cell);
  const DelayResult analytic = delay_analytic(cfg.params);
  const DelayResult numeric =
      group_delay_numeric(cfg.params, cfg.params.field.two_photon_detuning);

  CsvWriter w(o.out_path);
  echo_config(w, cfg);
  w.comment("carrier_two_photon_detuning_hz = " +
            format_sig9(cfg.params.field.two_photon_detuning / two_pi));
  w.comment("tau_pulse_us = " + format_sig9(pulse_tau.tau * 1e6) +
            ", tau_analytic_us = " + format_sig9(analytic.tau * 1e6) +
            ", tau_numeric_us = " + format_sig9(numeric.tau * 1e6));
  w.comment("fwhm_in_ms = " + format_sig9(fit_in.fwhm * 1e3) +
            ", fwhm_out_ms = " + format_sig9(fit_out.fwhm * 1e3) +
            ", peak_transmission = " +
            format_sig9(fit_out.amplitude / fit_in.amplitude));
  w.comment("group_index = " + format_sig9(pulse_tau.group_index) +
            ", group_velocity_m_s = " + format_sig9(pulse_tau.group_velocity));
  w.header({"time_s", "input_abs", "output_abs"});
  for (Eigen::Index i = 0; i < in.size(); ++i)
    w.row({format_sig9(in.time(i)), format_sig9(std::abs(in.samples(i))),
           format_sig9(std::abs(out.samples(i)))});
  return 0;
}

int cmd_sweep_detuning(const CommonOpts& o, double start_ghz, double stop_ghz,
                       int points, bool log_spacing) {
  const SimConfig cfg = resolve_config(o);
  SweepSpec spec{SweepAxis::one_photon_detuning, two_pi * 1e9 * start_ghz,
                 two_pi * 1e9 * stop_ghz, points, log_spacing};
  const double power =
      o.power_set ? o.power_uw * 1e-6 : cfg.total_power_w;
  const auto rows = detuning_sweep(cfg, power, spec);

  CsvWriter w(o.out_path);
  echo_config(w, cfg);
  w.comment("sweep_power_uw = " + format_sig9(power * 1e6));
  w.header({"delta_ghz", "tau_us", "kind"});
  for (const auto& r : rows)
    w.row({format_sig9(r.one_photon_detuning / (two_pi * 1e9)),
           r.tau ? format_sig9(*r.tau * 1e6) : std::string{},
           kind_name(r.kind)});
  return 0;
}

int cmd_sweep_power(const CommonOpts& o, double start_uw, double stop_uw,
                    int points, bool log_spacing) {
  const SimConfig cfg = resolve_config(o);
  SweepSpec spec{SweepAxis::total_power, start_uw * 1e-6, stop_uw * 1e-6, points,
                 log_spacing};
  const double delta1 = cfg.params.field.one_photon_detuning;
  const auto rows = power_sweep(cfg, delta1, spec);

  CsvWriter w(o.out_path);
  echo_config(w, cfg);
  w.header({"power_uw", "tau_analytic_us", "tau_pulse_us"});
  for (const auto& r : rows)
    w.row({format_sig9(r.power_w * 1e6), format_sig9(r.tau_analytic * 1e6),
           format_sig9(r.tau_pulse * 1e6)});
  return 0;
}

int cmd_resonance_stats(const CommonOpts& o, double start_uw, double stop_uw,
                        int points, bool log_spacing) {
  const SimConfig cfg = resolve_config(o);
  SweepSpec spec{SweepAxis::total_power, start_uw * 1e-6, stop_uw * 1e-6, points,
                 log_spacing};
  const double delta1 = cfg.params.field.one_photon_detuning;
  const auto rows = resonance_stats(cfg, delta1, spec);

  CsvWriter w(o.out_path);
  echo_config(w, cfg);
  w.comment(
      "fwhm_khz_rate is the dark-line width rate (a half width; the Lorentzian "
      "FWHM is twice it), fwhm_khz_extracted the full width of the simulated "
      "feature; both in ordinary kHz");
  w.header({"power_uw", "fwhm_khz_rate", "fwhm_khz_extracted", "amplitude"});
  for (const auto& r : rows)
    w.row({format_sig9(r.power_w * 1e6),
           format_sig9(r.width_rate / (two_pi * 1e3)),
           r.width_extracted ? format_sig9(*r.width_extracted / (two_pi * 1e3))
                             : std::string{},
           r.amplitude ? format_sig9(*r.amplitude) : std::string{}});
  return 0;
}

int cmd_calibrate(const CommonOpts& o, const std::string& write_config_path) {
  SimConfig cfg = resolve_config(o);
  const AnchorSet anchors = reference_anchor_set();
  const CalibrationResult result = calibrate_from_anchors(anchors, cfg.params);

  SimConfig calibrated = cfg;
  apply_calibration(calibrated, result.calibration);

  // cross-path values at each anchor: the homogeneous model's dispersion and
  // pulse delays carry the dark-line power-broadening discount relative to
  // the closed form, so they are reported alongside. Computed before the
  // writer opens so a numerical failure cannot truncate the report.
  std::vector<std::string> cross_path;
  for (std::size_t i = 0; i < result.anchors.size(); ++i) {
    const Anchor& a = result.anchors[i].anchor;
    SystemParams p = calibrated.params;
    p.field.one_photon_detuning = a.one_photon_detuning;
    p.field.drive_rabi = power_to_rabi(a.power_w, result.calibration);
    const double extremum = locate_extremum(p);
    if (a.observable == AnchorObservable::delay) {
      p.field.two_photon_detuning = extremum;
      const double tau_num = group_delay_numeric(p, extremum).tau;
      const PulseEnvelope in = gaussian_pulse(1e-3, 8e-3, 16e-3, 4096);
      const double tau_pulse = measure_delay(in, propagate(in, p), p.cell).tau;
      cross_path.push_back("anchor " + std::to_string(i + 1) +
                           " cross-path delays (us): analytic = " +
                           format_sig9(result.anchors[i].predicted * 1e6) +
                           ", numeric_dispersion = " + format_sig9(tau_num * 1e6) +
                           ", pulse_peak = " + format_sig9(tau_pulse * 1e6));
    } else {
      const Spectrum s = transmission_spectrum(p, feature_scan_grid(p));
      const ResonanceShape shape = characterize_resonance(s);
      cross_path.push_back(
          "anchor " + std::to_string(i + 1) +
          " cross-path widths (ordinary kHz): width_rate = " +
          format_sig9(result.anchors[i].predicted / (two_pi * 1e3)) +
          ", extracted_fwhm = " + format_sig9(shape.fwhm / (two_pi * 1e3)) +
          ", fwhm_model = " +
          format_sig9(2.0 * result.anchors[i].predicted / (two_pi * 1e3)));
    }
  }

  CsvWriter w(o.out_path);
  echo_config(w, cfg);
  w.comment("fitted k_rabi = " + format_sig9(result.calibration.k_rabi));
  w.comment("fitted gamma0_hz = " +
            format_sig9(result.calibration.gamma_0_fit / two_pi));
  w.comment("converged = " + std::to_string(int(result.converged)) +
            ", cost = " + format_sig9(result.cost));
  w.comment("all_within_tolerance = " +
            std::to_string(int(result.all_within_tolerance)));
  for (const auto& line : cross_path) w.comment(line);

  w.header({"observable", "power_uw", "delta_ghz", "target", "predicted",
            "residual", "units", "within_tolerance"});
  for (const auto& rep : result.anchors) {
    const bool is_delay = rep.anchor.observable == AnchorObservable::delay;
    w.row({is_delay ? "delay" : "width",
           format_sig9(rep.anchor.power_w * 1e6),
           format_sig9(rep.anchor.one_photon_detuning / (two_pi * 1e9)),
           format_sig9(rep.anchor.target), format_sig9(rep.predicted),
           format_sig9(rep.residual), is_delay ? "s" : "rad_s",
           rep.within_tolerance ? "1" : "0"});
  }

  if (!write_config_path.empty()) write_config(calibrated, write_config_path);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Lambda-medium slow/fast light simulator"};
  app.require_subcommand(1);

  CommonOpts spectrum_opts;
  int spectrum_points = 801;
  double spectrum_span_khz = 0.0;
  auto* spectrum = app.add_subcommand("spectrum", "probe transmission vs two-photon detuning");
  add_common(spectrum, &spectrum_opts);
  spectrum->add_option("--points", spectrum_points, "grid size")->check(CLI::Range(3, 2000000));
  spectrum->add_option("--span-khz", spectrum_span_khz,
                       "full scan span (ordinary kHz); 0 = auto");

  CommonOpts pulse_opts;
  double pulse_fwhm_ms = 1.0;
  int pulse_points = 4096;
  auto* pulse = app.add_subcommand("pulse", "propagate a Gaussian probe pulse");
  add_common(pulse, &pulse_opts);
  pulse->add_option("--pulse-fwhm-ms", pulse_fwhm_ms, "input pulse FWHM (ms)");
  pulse->add_option("--points", pulse_points, "samples (power of two)");

  CommonOpts sd_opts;
  double sd_start = 0.0, sd_stop = 2.0;
  int sd_points = 50;
  bool sd_log = false;
  auto* sweep_detuning =
      app.add_subcommand("sweep-detuning", "delay and lineshape vs one-photon detuning");
  add_common(sweep_detuning, &sd_opts);
  sweep_detuning->add_option("--start-ghz", sd_start, "sweep start (GHz)");
  sweep_detuning->add_option("--stop-ghz", sd_stop, "sweep stop (GHz)");
  sweep_detuning->add_option("--points", sd_points, "sweep points")->check(CLI::Range(2, 100000));
  sweep_detuning->add_flag("--log", sd_log, "logarithmic spacing");

  CommonOpts sp_opts;
  double sp_start = 50.0, sp_stop = 800.0;
  int sp_points = 16;
  bool sp_log = false;
  auto* sweep_power =
      app.add_subcommand("sweep-power", "analytic and pulse-measured delay vs power");
  add_common(sweep_power, &sp_opts);
  sweep_power->add_option("--start-uw", sp_start, "sweep start (uW)");
  sweep_power->add_option("--stop-uw", sp_stop, "sweep stop (uW)");
  sweep_power->add_option("--points", sp_points, "sweep points")->check(CLI::Range(2, 100000));
  sweep_power->add_flag("--log", sp_log, "logarithmic spacing");

  CommonOpts rs_opts;
  double rs_start = 1.0, rs_stop = 15.0;
  int rs_points = 8;
  bool rs_log = false;
  auto* stats =
      app.add_subcommand("resonance-stats", "dark-resonance width and amplitude vs power");
  add_common(stats, &rs_opts);
  stats->add_option("--start-uw", rs_start, "sweep start (uW)");
  stats->add_option("--stop-uw", rs_stop, "sweep stop (uW)");
  stats->add_option("--points", rs_points, "sweep points")->check(CLI::Range(2, 100000));
  stats->add_flag("--log", rs_log, "logarithmic spacing");

  CommonOpts cal_opts;
  std::string cal_write_config;
  auto* calibrate =
      app.add_subcommand("calibrate", "fit (k_rabi, gamma_0) to the reference anchors");
  add_common(calibrate, &cal_opts, false);
  calibrate->add_option("--write-config", cal_write_config,
                        "write the calibrated parameter file here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (spectrum->parsed())
      return cmd_spectrum(spectrum_opts, spectrum_points, spectrum_span_khz);
    if (pulse->parsed()) return cmd_pulse(pulse_opts, pulse_fwhm_ms, pulse_points);
    if (sweep_detuning->parsed())
      return cmd_sweep_detuning(sd_opts, sd_start, sd_stop, sd_points, sd_log);
    if (sweep_power->parsed())
      return cmd_sweep_power(sp_opts, sp_start, sp_stop, sp_points, sp_log);
    if (stats->parsed())
      return cmd_resonance_stats(rs_opts, rs_start, rs_stop, rs_points, rs_log);
    if (calibrate->parsed()) return cmd_calibrate(cal_opts, cal_write_config);
  } catch (const ConfigError& e) {
    std::cerr << "slowlight: config error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "slowlight: invalid input: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "slowlight: numerical failure: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace slowlight
