#include "slowlight/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "slowlight/constants.hpp"
#include "slowlight/errors.hpp"
#include "slowlight/lambda_system.hpp"
#include "slowlight/least_squares.hpp"

namespace slowlight {
namespace {

double drive_power(const SystemParams& p) {
  return p.field.drive_rabi * p.field.drive_rabi;
}

// (3/(8 pi)) N lambda^2 L gamma_r, the scale of every closed-form delay.
double delay_scale(const SystemParams& p) {
  return (3.0 / (8.0 * pi)) * p.cell.density * p.atom.wavelength *
         p.atom.wavelength * p.cell.length * p.atom.radiative_rate;
}

// Vertex of the parabola through three points (general spacing).
double parabolic_vertex(double x0, double y0, double x1, double y1, double x2,
                        double y2) {
  const double d1 = (y1 - y0) / (x1 - x0);
  const double d2 = (y2 - y1) / (x2 - x1);
  const double curv = (d2 - d1) / (x2 - x0);
  if (curv == 0.0) return x1;
  const double v = 0.5 * (x0 + x1 - d1 / curv);
  // keep the vertex inside the bracket
  return std::clamp(v, std::min(x0, x2), std::max(x0, x2));
}

double interp(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y, double xq) {
  const Eigen::Index n = x.size();
  if (xq <= x(0)) return y(0);
  if (xq >= x(n - 1)) return y(n - 1);
  Eigen::Index lo = 0, hi = n - 1;
  while (hi - lo > 1) {
    const Eigen::Index mid = (lo + hi) / 2;
    (x(mid) <= xq ? lo : hi) = mid;
  }
  const double t = (xq - x(lo)) / (x(lo + 1) - x(lo));
  return y(lo) + t * (y(lo + 1) - y(lo));
}

}  // namespace

DelayResult make_delay_result(double tau, DelayMethod method, double cell_length) {
  DelayResult r;
  r.tau = tau;
  r.method = method;
  r.group_index = group_index_from_delay(tau, cell_length);
  r.group_velocity = tau != 0.0 ? cell_length / tau : c_light;
  return r;
}

double power_broadening_rate(const SystemParams& p) {
  const double g = p.atom.optical_decay;
  const double D = p.field.one_photon_detuning;
  return g * drive_power(p) / (g * g + D * D);
}

double light_shift(const SystemParams& p) {
  const double g = p.atom.optical_decay;
  const double D = p.field.one_photon_detuning;
  return D * drive_power(p) / (g * g + D * D);
}

Eigen::ArrayXd feature_scan_grid(const SystemParams& p, int n_points,
                                 double halfwidths) {
  if (n_points < 3) throw std::invalid_argument("grid needs at least 3 points");
  const double half = p.atom.ground_decay + power_broadening_rate(p);
  const double hw = halfwidths * half + 3.0 * std::abs(light_shift(p));
  return Eigen::ArrayXd::LinSpaced(n_points, -hw, hw);
}

Spectrum transmission_spectrum(const SystemParams& p, const Eigen::ArrayXd& grid) {
  p.validate();
  const Eigen::Index n = grid.size();
  if (n < 3) throw std::invalid_argument("spectrum grid needs at least 3 points");
  for (Eigen::Index i = 1; i < n; ++i)
    if (!(grid(i) > grid(i - 1)))
      throw std::invalid_argument("spectrum grid must be strictly increasing");

  Spectrum s;
  s.detuning = grid;
  s.transmission.resize(n);
  s.phase.resize(n);
  s.chi.resize(n);
  const double L = p.cell.length;
  const double k0 = optical_frequency(p) / c_light;
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::complex<double> chi = susceptibility(p, grid(i)).chi;
    s.chi(i) = chi;
    s.transmission(i) = std::exp(-k0 * chi.imag() * L);
    s.phase(i) = 0.5 * k0 * chi.real() * L;
  }
  return s;
}

double locate_extremum(const SystemParams& p) {
  const Eigen::ArrayXd grid = feature_scan_grid(p);
  const Spectrum s = transmission_spectrum(p, grid);
  const Eigen::Index n = grid.size();
  const double baseline = 0.5 * (s.transmission(0) + s.transmission(n - 1));
  Eigen::Index best = 0;
  double best_contrast = -1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double c = std::abs(s.transmission(i) - baseline);
    if (c > best_contrast) {
      best_contrast = c;
      best = i;
    }
  }
  if (best == 0 || best == n - 1) return grid(best);
  return parabolic_vertex(grid(best - 1), s.transmission(best - 1), grid(best),
                          s.transmission(best), grid(best + 1),
                          s.transmission(best + 1));
}

DelayResult group_delay_numeric(const SystemParams& p, double delta) {
  p.validate();
  const double g0 = p.atom.ground_decay;
  const double feature_fwhm = 2.0 * (g0 + power_broadening_rate(p));
  const double h = std::min(g0, feature_fwhm) / 50.0;

  const double omega = optical_frequency(p);
  const double n_mid = refractive_index(susceptibility(p, delta).chi);
  const double n_hi = refractive_index(susceptibility(p, delta + h).chi);
  const double n_lo = refractive_index(susceptibility(p, delta - h).chi);
  const double dn_domega = (n_hi - n_lo) / (2.0 * h);
  const double tau = p.cell.length / c_light * (n_mid - 1.0 + omega * dn_domega);
  if (!std::isfinite(tau))
    throw NumericError("group delay derivative is not finite");
  return make_delay_result(tau, DelayMethod::numeric_dispersion, p.cell.length);
}

DelayResult delay_analytic(const SystemParams& p) {
  p.validate();
  const double g = p.atom.optical_decay;
  const double g0 = p.atom.ground_decay;
  const double W = drive_power(p);
  const double D = p.field.one_photon_detuning;
  const double D2 = D * D;
  const double opt2 = g * g + D2;

  const double den1 = 2.0 * g0 * D2 + g * W;
  const double den2 = g0 * g0 * D2 * opt2 + g * g * W * W;
  if (den1 == 0.0 || den2 == 0.0)
    throw NumericError(
        "degenerate input: closed-form delay undefined for zero drive at zero "
        "detuning");
  const double numerator =
      g * W * W - 2.0 * W * (D2 / opt2) * (g0 * D2 + g * W);
  const double tau = delay_scale(p) * (opt2 / den1) * numerator / den2;
  return make_delay_result(tau, DelayMethod::closed_form, p.cell.length);
}

DelayResult delay_slow_asymptote(const SystemParams& p) {
  p.validate();
  const double W = drive_power(p);
  const double g = p.atom.optical_decay;
  const double g0 = p.atom.ground_decay;
  // warn once per process per condition
  static bool warned_power = false, warned_doppler = false;
  if (W < 10.0 * g0 * g && !warned_power) {
    warned_power = true;
    std::cerr << "slowlight: warning: slow-light asymptote outside validity, "
                 "|Omega|^2 < 10 gamma_0 gamma (suppressing repeats)\n";
  }
  // second validity condition as stated for the Doppler-broadened line
  if (W < 10.0 * std::sqrt(g0 / g) * p.atom.doppler_width && !warned_doppler) {
    warned_doppler = true;
    std::cerr << "slowlight: warning: slow-light asymptote outside validity, "
                 "|Omega|^2 < 10 sqrt(gamma_0/gamma) W_D (suppressing repeats)\n";
  }
  const double tau = delay_scale(p) / W;
  return make_delay_result(tau, DelayMethod::slow_asymptote, p.cell.length);
}

DelayResult delay_fast_asymptote(const SystemParams& p) {
  p.validate();
  const double D = p.field.one_photon_detuning;
  if (D == 0.0)
    throw std::domain_error("fast-light asymptote requires a one-photon detuning");
  const double g0 = p.atom.ground_decay;
  const double tau = -delay_scale(p) * drive_power(p) / (g0 * g0 * D * D);
  return make_delay_result(tau, DelayMethod::fast_asymptote, p.cell.length);
}

EitWidth eit_width(const SystemParams& p) {
  p.validate();
  const double g0 = p.atom.ground_decay;
  if (g0 == 0.0) throw std::domain_error("dark-resonance width requires gamma_0 > 0");
  const double D = p.field.one_photon_detuning;
  if (D == 0.0) return {g0, true};
  const double g = p.atom.optical_decay;
  const double W = drive_power(p);
  const double D4 = D * D * D * D;
  return {g0 + g * g * W * W / (2.0 * g0 * D4), false};
}

ResonanceShape characterize_resonance(const Spectrum& spec,
                                      double dispersive_threshold) {
  const Eigen::Index n = spec.detuning.size();
  if (n < 5 || spec.transmission.size() != n)
    throw std::invalid_argument("spectrum too short to characterize");

  const Eigen::ArrayXd& x = spec.detuning;
  const double baseline = 0.5 * (spec.transmission(0) + spec.transmission(n - 1));
  const Eigen::ArrayXd f = spec.transmission - baseline;

  Eigen::Index peak = 0;
  for (Eigen::Index i = 1; i < n; ++i)
    if (std::abs(f(i)) > std::abs(f(peak))) peak = i;
  if (peak == 0 || peak == n - 1)
    throw NumericError("resonance extremum lies on the grid boundary");

  const double amplitude = f(peak);
  if (std::abs(amplitude) < 1e-6)
    throw NumericError("resonance contrast below the 1e-6 noise floor");

  const double center = parabolic_vertex(x(peak - 1), f(peak - 1), x(peak),
                                         f(peak), x(peak + 1), f(peak + 1));

  // half-contrast crossings, linear interpolation
  auto crossing = [&](int dir) -> double {
    const double half = amplitude / 2.0;
    for (Eigen::Index i = peak; i + dir >= 0 && i + dir < n; i += dir) {
      const double a = f(i) - half;
      const double b = f(i + dir) - half;
      if (a == 0.0) return x(i);
      if ((a > 0) != (b > 0)) {
        const double t = a / (a - b);
        return x(i) + t * (x(i + dir) - x(i));
      }
    }
    throw NumericError("half-contrast crossing not found inside the grid");
  };
  const double left = crossing(-1);
  const double right = crossing(+1);
  const double fwhm = right - left;

  // antisymmetric vs symmetric content about the refined center
  const double span = std::min(center - x(0), x(n - 1) - center);
  constexpr int kOffsets = 400;
  double anti2 = 0.0, sym2 = 0.0;
  for (int j = 1; j <= kOffsets; ++j) {
    const double dx = span * double(j) / double(kOffsets);
    const double fp = interp(x, f, center + dx);
    const double fm = interp(x, f, center - dx);
    const double a = 0.5 * (fp - fm);
    const double s = 0.5 * (fp + fm);
    anti2 += a * a;
    sym2 += s * s;
  }
  const double asymmetry =
      sym2 > 0.0 ? std::sqrt(anti2 / sym2) : std::numeric_limits<double>::infinity();

  ResonanceShape shape;
  shape.center = center;
  shape.fwhm = fwhm;
  shape.amplitude = amplitude;
  shape.asymmetry = asymmetry;
  shape.kind = asymmetry > dispersive_threshold
                   ? ShapeKind::dispersive
                   : (amplitude > 0 ? ShapeKind::transmission : ShapeKind::absorption);
  shape.lorentz_fwhm = std::numeric_limits<double>::quiet_NaN();

  if (shape.kind != ShapeKind::dispersive) {
    // model-based width for symmetric shapes: A w^2/(w^2 + (x-c)^2) + b
    const Eigen::ArrayXd& T = spec.transmission;
    auto residuals = [&](const Eigen::VectorXd& q) {
      Eigen::VectorXd r(n);
      const double A = q(0), cc = q(1), w = q(2), b = q(3);
      for (Eigen::Index i = 0; i < n; ++i) {
        const double u = x(i) - cc;
        r(i) = T(i) - (b + A * w * w / (w * w + u * u));
      }
      return r;
    };
    Eigen::VectorXd init(4);
    init << amplitude, center, fwhm / 2.0, baseline;
    const auto fit = fit_damped(residuals, init);
    if (fit.converged && fit.parameters(2) != 0.0)
      shape.lorentz_fwhm = 2.0 * std::abs(fit.parameters(2));
  }
  return shape;
}

double phase_budget(double tau, double width) { return tau * width; }

double group_index_from_delay(double tau, double cell_length) {
  if (cell_length <= 0) throw std::invalid_argument("cell length must be positive");
  return 1.0 + c_light * tau / cell_length;
}

}  // namespace slowlight
