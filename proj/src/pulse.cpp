#include "slowlight/pulse.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "slowlight/constants.hpp"
#include "slowlight/errors.hpp"
#include "slowlight/lambda_system.hpp"
#include "slowlight/least_squares.hpp"

namespace slowlight {
namespace {

constexpr double kFourLn2 = 4.0 * 0.6931471805599453;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Spectral convention: samples(t) = (1/N) sum_k S_k exp(-i d_k t), so a
// spectral factor exp(+i d tau0) delays the envelope by tau0 and
// exp(i (omega/2c) chi L) both delays (Re chi slope) and attenuates
// (Im chi >= 0). Analysis is the conjugate transform.
Eigen::VectorXcd analyze(const Eigen::ArrayXcd& samples) {
  Eigen::FFT<double> fft;
  Eigen::VectorXcd src = samples.matrix();
  Eigen::VectorXcd spec;
  fft.inv(spec, src);
  return spec;
}

Eigen::ArrayXcd synthesize(const Eigen::VectorXcd& spec) {
  Eigen::FFT<double> fft;
  Eigen::VectorXcd out;
  fft.fwd(out, spec);
  return out.array();
}

double edge_magnitude(const PulseEnvelope& p) {
  return std::max(std::abs(p.samples(0)), std::abs(p.samples(p.size() - 1)));
}

// FWHM of |spectrum| around its peak, for the narrowband warning.
double spectral_fwhm(const Eigen::VectorXcd& spec, const Eigen::ArrayXd& dgrid) {
  const Eigen::Index n = spec.size();
  Eigen::Index peak = 0;
  for (Eigen::Index i = 1; i < n; ++i)
    if (std::abs(spec(i)) > std::abs(spec(peak))) peak = i;
  const double half = std::abs(spec(peak)) / 2.0;
  // bins ordered [0.., negative..]; walk in both frequency directions
  auto walk = [&](int dir) -> double {
    Eigen::Index i = peak;
    for (Eigen::Index steps = 0; steps < n - 1; ++steps) {
      const Eigen::Index next = (i + dir + n) % n;
      if (std::abs(spec(next)) < half) return std::abs(dgrid(next) - dgrid(peak));
      i = next;
    }
    return std::abs(dgrid((peak + n / 2) % n) - dgrid(peak));
  };
  return walk(+1) + walk(-1);
}

}  // namespace

PulseEnvelope gaussian_pulse(double fwhm, double t_center, double window,
                             int n_samples) {
  if (fwhm <= 0) throw std::invalid_argument("pulse fwhm must be positive");
  if (!is_power_of_two(n_samples) || n_samples < 64)
    throw std::invalid_argument("sample count must be a power of two >= 64");
  if (window < 8.0 * fwhm)
    throw std::invalid_argument(
        "record window shorter than 8 pulse widths would violate the "
        "edge-decay requirement");
  PulseEnvelope p;
  p.start_time = 0.0;
  p.sample_interval = window / n_samples;
  p.samples.resize(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    const double u = p.time(i) - t_center;
    p.samples(i) = std::exp(-kFourLn2 * u * u / (fwhm * fwhm));
  }
  return p;
}

Eigen::ArrayXd spectral_grid(const PulseEnvelope& pulse) {
  const Eigen::Index n = pulse.size();
  Eigen::ArrayXd d(n);
  const double base = two_pi / (pulse.sample_interval * double(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    const double kk = (k <= n / 2 - 1) ? double(k) : double(k) - double(n);
    d(k) = base * kk;
  }
  return d;
}

Eigen::ArrayXcd transfer_function(const SystemParams& p,
                                  const Eigen::ArrayXd& dgrid) {
  p.validate();
  const double carrier = p.field.two_photon_detuning;
  const double factor = optical_frequency(p) / (2.0 * c_light) * p.cell.length;
  Eigen::ArrayXcd H(dgrid.size());
  for (Eigen::Index i = 0; i < dgrid.size(); ++i) {
    const std::complex<double> chi = susceptibility(p, carrier + dgrid(i)).chi;
    H(i) = std::exp(std::complex<double>(0.0, 1.0) * factor * chi);
  }
  return H;
}

PulseEnvelope apply_transfer(const PulseEnvelope& pulse,
                             const Eigen::ArrayXcd& transfer) {
  if (transfer.size() != pulse.size())
    throw std::invalid_argument("transfer function grid does not match the pulse");
  const Eigen::VectorXcd spec = analyze(pulse.samples);
  PulseEnvelope out = pulse;
  out.samples = synthesize((spec.array() * transfer).matrix());
  return out;
}

PulseEnvelope propagate(const PulseEnvelope& pulse, const SystemParams& p) {
  p.validate();
  PulseEnvelope in = pulse;
  if (!is_power_of_two(int(in.size())) || in.size() < 64) {
    Eigen::Index n = 64;
    while (n < in.size()) n *= 2;
    Eigen::ArrayXcd padded = Eigen::ArrayXcd::Zero(n);
    padded.head(in.size()) = in.samples;
    in.samples.swap(padded);
  }
  const double peak = in.samples.abs().maxCoeff();
  if (peak <= 0) throw std::invalid_argument("empty pulse");
  if (edge_magnitude(in) > 1e-6 * peak)
    throw std::invalid_argument(
        "pulse does not decay below 1e-6 of its peak at the record edges");

  const Eigen::ArrayXd dgrid = spectral_grid(in);
  const Eigen::VectorXcd spec = analyze(in.samples);
  const double pulse_width = spectral_fwhm(spec, dgrid);
  const double feature_width =
      2.0 * (p.atom.ground_decay + power_broadening_rate(p));
  if (p.cell.density > 0 && pulse_width >= feature_width)
    std::cerr << "slowlight: warning: pulse spectral width "
              << pulse_width << " rad/s exceeds the resonance width "
              << feature_width << " rad/s; expect reshaping\n";

  const Eigen::ArrayXcd H = transfer_function(p, dgrid);
  PulseEnvelope out = in;
  out.samples = synthesize((spec.array() * H).matrix());

  const double out_peak = out.samples.abs().maxCoeff();
  if (out_peak > 0 && edge_magnitude(out) > 1e-3 * out_peak) {
    std::ostringstream msg;
    msg << "propagated pulse wrapped around the record (edge amplitude "
        << edge_magnitude(out) / out_peak << " of peak); enlarge the window";
    throw NumericError(msg.str());
  }
  return out;
}

GaussianFit fit_gaussian(const PulseEnvelope& pulse) {
  const Eigen::Index n = pulse.size();
  if (n < 8) throw std::invalid_argument("pulse too short to fit");
  Eigen::ArrayXd y = pulse.samples.abs();
  Eigen::ArrayXd t(n);
  for (Eigen::Index i = 0; i < n; ++i) t(i) = pulse.time(i);

  Eigen::Index peak = 0;
  for (Eigen::Index i = 1; i < n; ++i)
    if (y(i) > y(peak)) peak = i;
  const double ymax = y(peak), ymin = y.minCoeff();
  if (!(ymax > ymin))
    throw NumericError("flat envelope: nothing to fit");

  // initial guesses from the discrete peak and half-max crossings
  const double half = ymin + (ymax - ymin) / 2.0;
  Eigen::Index lo = peak, hi = peak;
  while (lo > 0 && y(lo) > half) --lo;
  while (hi < n - 1 && y(hi) > half) ++hi;
  double fwhm0 = t(hi) - t(lo);
  if (fwhm0 <= 0) fwhm0 = (t(n - 1) - t(0)) / 4.0;

  auto model = [&](const Eigen::VectorXd& q, Eigen::Index i) {
    const double u = t(i) - q(1);
    return q(3) + q(0) * std::exp(-kFourLn2 * u * u / (q(2) * q(2)));
  };
  auto residuals = [&](const Eigen::VectorXd& q) {
    Eigen::VectorXd r(n);
    for (Eigen::Index i = 0; i < n; ++i) r(i) = y(i) - model(q, i);
    return r;
  };
  auto jacobian = [&](const Eigen::VectorXd& q) {
    Eigen::MatrixXd J(n, 4);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double u = t(i) - q(1);
      const double e = std::exp(-kFourLn2 * u * u / (q(2) * q(2)));
      J(i, 0) = -e;
      J(i, 1) = -q(0) * e * 2.0 * kFourLn2 * u / (q(2) * q(2));
      J(i, 2) = -q(0) * e * 2.0 * kFourLn2 * u * u / (q(2) * q(2) * q(2));
      J(i, 3) = -1.0;
    }
    return J;
  };

  Eigen::VectorXd init(4);
  init << ymax - ymin, t(peak), fwhm0, ymin;
  const auto fit = fit_damped(residuals, init, jacobian);
  if (!fit.converged)
    throw NumericError("Gaussian fit did not converge within 100 iterations");

  GaussianFit g;
  g.amplitude = fit.parameters(0);
  g.peak_time = fit.parameters(1);
  g.fwhm = std::abs(fit.parameters(2));
  g.baseline = fit.parameters(3);
  g.rms_residual = std::sqrt(fit.cost / double(n)) / std::abs(g.amplitude);
  return g;
}

DelayResult measure_delay(const PulseEnvelope& input, const PulseEnvelope& output,
                          const CellParams& cell) {
  const GaussianFit in = fit_gaussian(input);
  const GaussianFit out = fit_gaussian(output);
  return make_delay_result(out.peak_time - in.peak_time, DelayMethod::pulse_peak,
                           cell.length);
}

double pulse_energy(const PulseEnvelope& pulse) {
  return pulse.samples.abs2().sum() * pulse.sample_interval;
}

void write_envelope_csv(const PulseEnvelope& pulse, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write envelope file: " + path);
  out << "time_s,amplitude\n";
  out.precision(12);
  for (Eigen::Index i = 0; i < pulse.size(); ++i)
    out << pulse.time(i) << ',' << std::abs(pulse.samples(i)) << '\n';
}

PulseEnvelope read_envelope_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open envelope file: " + path);
  std::string line;
  std::vector<double> ts, as;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("time_s", 0) == 0) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ConfigError("envelope file: expected 'time_s,amplitude'");
    ts.push_back(std::stod(line.substr(0, comma)));
    as.push_back(std::stod(line.substr(comma + 1)));
  }
  if (ts.size() < 2) throw ConfigError("envelope file too short");
  PulseEnvelope p;
  p.start_time = ts.front();
  p.sample_interval = ts[1] - ts[0];
  for (std::size_t i = 1; i < ts.size(); ++i) {
    const double dt = ts[i] - ts[i - 1];
    if (std::abs(dt - p.sample_interval) > 1e-9 * p.sample_interval)
      throw ConfigError("envelope file must be uniformly sampled");
  }
  p.samples.resize(Eigen::Index(as.size()));
  for (std::size_t i = 0; i < as.size(); ++i) p.samples(Eigen::Index(i)) = as[i];
  return p;
}

}  // namespace slowlight
