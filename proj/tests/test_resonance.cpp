#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "slowlight/constants.hpp"
#include "slowlight/errors.hpp"
#include "slowlight/resonance.hpp"
#include "slowlight/sweeps.hpp"
#include "test_support.hpp"

using namespace slowlight;

namespace {

SystemParams random_valid_params(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SystemParams p = default_params();
  p.cell.density = std::pow(10.0, 15.0 + 4.0 * u(rng));
  p.cell.length = 1e-3 * std::pow(10.0, 2.0 * u(rng));
  p.atom.wavelength = 400e-9 + 1200e-9 * u(rng);
  p.atom.optical_decay = two_pi * std::pow(10.0, 6.5 + 2.5 * u(rng));
  p.atom.radiative_rate = std::min(two_pi * std::pow(10.0, 5.0 + 2.5 * u(rng)),
                                   2.0 * p.atom.optical_decay);
  p.atom.ground_decay = two_pi * std::pow(10.0, 1.0 + 4.0 * u(rng));
  p.field.drive_rabi = two_pi * std::pow(10.0, 3.0 + 5.0 * u(rng));
  return p;
}

Spectrum lorentzian_dip(double center, double hwhm, double depth, int n,
                        double span_halfwidths) {
  Spectrum s;
  s.detuning = Eigen::ArrayXd::LinSpaced(n, center - span_halfwidths * hwhm,
                                         center + span_halfwidths * hwhm);
  s.transmission.resize(n);
  s.phase = Eigen::ArrayXd::Zero(n);
  s.chi = Eigen::ArrayXcd::Zero(n);
  for (int i = 0; i < n; ++i) {
    const double u = s.detuning(i) - center;
    s.transmission(i) = 1.0 - depth * hwhm * hwhm / (hwhm * hwhm + u * u);
  }
  return s;
}

}  // namespace

TEST_CASE("closed-form delay reduces exactly to the slow asymptote on resonance") {
  std::mt19937 rng(20240811);
  for (int i = 0; i < 1000; ++i) {
    SystemParams p = random_valid_params(rng);
    p.field.one_photon_detuning = 0.0;
    const double full = delay_analytic(p).tau;
    const double asym = delay_slow_asymptote(p).tau;
    CHECK(std::abs(full - asym) <= 1e-9 * std::abs(asym));
  }
}

TEST_CASE("closed-form delay converges to the fast asymptote") {
  // under the usual EIT conditions |Omega|^2 >> gamma gamma_0, the validity
  // bound Delta^2 >= 100 (gamma/gamma_0) |Omega|^2 also puts the detuning far
  // outside the optical line
  std::mt19937 rng(77);
  for (int i = 0; i < 60; ++i) {
    SystemParams p = random_valid_params(rng);
    const double g = p.atom.optical_decay, g0 = p.atom.ground_decay;
    p.field.drive_rabi =
        std::max(p.field.drive_rabi, std::sqrt(10.0 * g * g0));
    const double W = p.field.drive_rabi * p.field.drive_rabi;
    for (double factor : {100.0, 1e4}) {
      p.field.one_photon_detuning = std::sqrt(factor * (g / g0) * W);
      const double full = delay_analytic(p).tau;
      const double asym = delay_fast_asymptote(p).tau;
      CHECK(asym < 0.0);
      CHECK(std::abs(full - asym) <= 0.05 * std::abs(asym));
    }
  }
}

TEST_CASE("asymptote scaling laws") {
  SystemParams p = test::calibrated_config().params;
  p.field.one_photon_detuning = two_pi * 1.45e9;
  p.field.drive_rabi = two_pi * 2e6;
  const double tau1 = delay_fast_asymptote(p).tau;

  SUBCASE("doubling power doubles the advance") {
    p.field.drive_rabi *= std::sqrt(2.0);
    CHECK(delay_fast_asymptote(p).tau == doctest::Approx(2.0 * tau1).epsilon(1e-12));
  }
  SUBCASE("doubling detuning quarters the advance") {
    p.field.one_photon_detuning *= 2.0;
    CHECK(delay_fast_asymptote(p).tau == doctest::Approx(tau1 / 4.0).epsilon(1e-12));
  }
  SUBCASE("slow asymptote: doubling power halves the delay, density is linear") {
    p.field.one_photon_detuning = 0.0;
    const double slow1 = delay_slow_asymptote(p).tau;
    p.field.drive_rabi *= std::sqrt(2.0);
    CHECK(delay_slow_asymptote(p).tau == doctest::Approx(slow1 / 2.0).epsilon(1e-12));
    p.cell.density *= 2.0;
    CHECK(delay_slow_asymptote(p).tau == doctest::Approx(slow1).epsilon(1e-12));
  }
  SUBCASE("zero detuning rejected by the fast asymptote") {
    p.field.one_photon_detuning = 0.0;
    CHECK_THROWS_AS(delay_fast_asymptote(p), std::domain_error);
  }
}

TEST_CASE("closed-form delay edge cases") {
  SystemParams p = default_params();
  SUBCASE("vanishing drive at finite detuning gives vanishing delay") {
    p.field.one_photon_detuning = two_pi * 1e9;
    p.field.drive_rabi = two_pi * 10.0;
    const double tiny = std::abs(delay_analytic(p).tau);
    p.field.drive_rabi = two_pi * 100.0;
    CHECK(tiny < std::abs(delay_analytic(p).tau));
    CHECK(tiny < 1e-9);
  }
  SUBCASE("degenerate input") {
    p.field.drive_rabi = 0.0;
    p.field.one_photon_detuning = 0.0;
    CHECK_THROWS_AS(delay_analytic(p), NumericError);
  }
}

TEST_CASE("dark-resonance width expression") {
  SystemParams p = default_params();
  p.field.one_photon_detuning = two_pi * 1.45e9;

  SUBCASE("no power, no broadening") {
    p.field.drive_rabi = 0.0;
    CHECK(eit_width(p).value == doctest::Approx(p.atom.ground_decay).epsilon(1e-14));
    CHECK_FALSE(eit_width(p).out_of_model);
  }
  SUBCASE("power term scales as the fourth power of Rabi frequency") {
    p.field.drive_rabi = two_pi * 2e6;
    const double w1 = eit_width(p).value - p.atom.ground_decay;
    p.field.drive_rabi *= std::sqrt(2.0);
    const double w2 = eit_width(p).value - p.atom.ground_decay;
    CHECK(w2 == doctest::Approx(4.0 * w1).epsilon(1e-10));
  }
  SUBCASE("on resonance the expression is out of model") {
    p.field.one_photon_detuning = 0.0;
    p.field.drive_rabi = two_pi * 2e6;
    const EitWidth w = eit_width(p);
    CHECK(w.out_of_model);
    CHECK(w.value == doctest::Approx(p.atom.ground_decay));
  }
}

TEST_CASE("oracle equivalence: dispersion delay vs closed form, 5 x 6 grid") {
  // inside both validity regions: |Omega|^2 >= 200 gamma gamma_0 on the slow
  // side, Delta^2 >= 300 (gamma/gamma_0) |Omega|^2 on the fast side
  SystemParams p = default_params();
  p.atom.ground_decay = two_pi * 1e4;
  const double k = 1e9;
  const std::vector<double> powers = {8e-3, 16e-3, 32e-3, 64e-3, 128e-3};
  const std::vector<double> detunings = {0.0,          two_pi * 2e6,
                                         two_pi * 100e9, two_pi * 140e9,
                                         two_pi * 200e9, two_pi * 280e9};
  for (double P : powers)
    for (double D : detunings) {
      p.field.drive_rabi = k * std::sqrt(P);
      p.field.one_photon_detuning = D;
      const double extremum = locate_extremum(p);
      const double numeric = group_delay_numeric(p, extremum).tau;
      const double analytic = delay_analytic(p).tau;
      CHECK(std::abs(numeric - analytic) <= 0.02 * std::abs(analytic));
    }
}

TEST_CASE("normalization anchor: dispersion delay reproduces the slow asymptote") {
  SystemParams p = default_params();
  p.field.one_photon_detuning = 0.0;
  const double g = p.atom.optical_decay, g0 = p.atom.ground_decay;
  p.field.drive_rabi = std::sqrt(1000.0 * g * g0);
  const double numeric = group_delay_numeric(p, 0.0).tau;
  // independent arithmetic of (3/(8 pi)) N lambda^2 L gamma_r / W
  const double expected = 0.119366207318922 * 4.7e17 * 795e-9 * 795e-9 * 0.025 *
                          (two_pi * 5.75e6) /
                          (p.field.drive_rabi * p.field.drive_rabi);
  CHECK(std::abs(numeric - expected) <= 0.01 * expected);
}

TEST_CASE("vacuum cell: zero delay, unit transmission, zero phase") {
  SystemParams p = default_params();
  p.cell.density = 0.0;
  p.field.drive_rabi = two_pi * 2e6;
  CHECK(group_delay_numeric(p, 0.0).tau == 0.0);
  const Eigen::ArrayXd grid = Eigen::ArrayXd::LinSpaced(11, -1e5, 1e5);
  const Spectrum s = transmission_spectrum(p, grid);
  for (int i = 0; i < 11; ++i) {
    CHECK(s.transmission(i) == 1.0);
    CHECK(s.phase(i) == 0.0);
  }
}

TEST_CASE("transmission spectrum of the calibrated medium") {
  const SimConfig& cfg = test::calibrated_config();

  SUBCASE("on resonance: narrow transmission peak") {
    SystemParams p = cfg.params;
    p.field.one_photon_detuning = 0.0;
    p.field.drive_rabi = power_to_rabi(400e-6, cfg.cal);
    const Spectrum s = transmission_spectrum(p, feature_scan_grid(p));
    const ResonanceShape shape = characterize_resonance(s);
    CHECK(shape.kind == ShapeKind::transmission);
    CHECK(shape.amplitude > 0.0);
    CHECK(shape.fwhm < two_pi * 50e3);  // narrow vs any optical scale
    CHECK(s.transmission.maxCoeff() <= 1.0 + 1e-9);
    CHECK(s.transmission.minCoeff() >= 0.0);
  }

  SUBCASE("far detuned: narrow absorption dip of comparable width") {
    SystemParams p = cfg.params;
    p.field.one_photon_detuning = two_pi * 1.45e9;
    p.field.drive_rabi = power_to_rabi(400e-6, cfg.cal);
    const Spectrum s = transmission_spectrum(p, feature_scan_grid(p));
    const ResonanceShape shape = characterize_resonance(s);
    CHECK(shape.kind == ShapeKind::absorption);
    CHECK(shape.amplitude < 0.0);
    CHECK(shape.fwhm < two_pi * 100e3);
    // the feature sits at the light-shifted two-photon resonance
    CHECK(shape.center == doctest::Approx(light_shift(p)).epsilon(0.25));
  }
}

TEST_CASE("characterize_resonance on synthetic lineshapes") {
  SUBCASE("symmetric Lorentzian dip") {
    const double hwhm = 1e4;
    const Spectrum s = lorentzian_dip(0.0, hwhm, 0.4, 4001, 30.0);
    const ResonanceShape shape = characterize_resonance(s);
    CHECK(shape.kind == ShapeKind::absorption);
    CHECK(shape.asymmetry < 1e-6);
    const double grid_step = s.detuning(1) - s.detuning(0);
    CHECK(std::abs(shape.fwhm - 2.0 * hwhm) < grid_step);
    CHECK(shape.lorentz_fwhm == doctest::Approx(2.0 * hwhm).epsilon(1e-6));
    CHECK(shape.amplitude == doctest::Approx(-0.4).epsilon(2e-3));
  }
  SUBCASE("extremum on the boundary is an error") {
    Spectrum s;
    s.detuning = Eigen::ArrayXd::LinSpaced(101, 0.0, 1.0);
    s.transmission = s.detuning;  // monotone ramp
    s.phase = Eigen::ArrayXd::Zero(101);
    s.chi = Eigen::ArrayXcd::Zero(101);
    CHECK_THROWS_AS(characterize_resonance(s), NumericError);
  }
  SUBCASE("contrast below the noise floor is an error") {
    Spectrum s = lorentzian_dip(0.0, 1e4, 1e-8, 1001, 20.0);
    CHECK_THROWS_AS(characterize_resonance(s), NumericError);
  }
}

TEST_CASE("lineshape transition: peak, dispersive band, dip") {
  // The homogeneous model changes character around Delta ~ gamma; the
  // dispersive band therefore sits near 0.5 GHz for the 100 MHz default
  // optical width (the experiment's band scales with its ~1 GHz width).
  const SimConfig& cfg = test::calibrated_config();
  SystemParams p = cfg.params;
  p.field.drive_rabi = power_to_rabi(400e-6, cfg.cal);

  auto kind_at = [&](double delta_ghz) {
    p.field.one_photon_detuning = two_pi * 1e9 * delta_ghz;
    const Spectrum s = transmission_spectrum(p, feature_scan_grid(p));
    return characterize_resonance(s).kind;
  };

  CHECK(kind_at(0.0) == ShapeKind::transmission);
  CHECK(kind_at(0.1) == ShapeKind::transmission);
  CHECK(kind_at(1.45) == ShapeKind::absorption);
  CHECK(kind_at(2.0) == ShapeKind::absorption);
  bool found_dispersive = false;
  for (double dg : {0.40, 0.45, 0.50, 0.55, 0.60, 0.65})
    found_dispersive = found_dispersive || kind_at(dg) == ShapeKind::dispersive;
  CHECK(found_dispersive);
}

TEST_CASE("sign structure of the delay at the located extremum") {
  const SimConfig& cfg = test::calibrated_config();
  SystemParams p = cfg.params;
  p.field.drive_rabi = power_to_rabi(400e-6, cfg.cal);

  auto tau_at = [&](double delta_ghz) {
    p.field.one_photon_detuning = two_pi * 1e9 * delta_ghz;
    return group_delay_numeric(p, locate_extremum(p)).tau;
  };
  // slow branch well inside the optical line, fast branch well outside
  for (double dg : {0.0, 0.1, 0.2}) CHECK(tau_at(dg) > 0.0);
  for (double dg : {0.9, 1.45, 2.0}) CHECK(tau_at(dg) < 0.0);
}

TEST_CASE("power laws of the delay") {
  const SimConfig& cfg = test::calibrated_config();

  SUBCASE("inverse power law on resonance (a decade)") {
    std::vector<double> powers, taus;
    for (int i = 0; i < 10; ++i) {
      const double P = 100e-6 * std::pow(10.0, i / 9.0);
      SystemParams p = cfg.params;
      p.field.one_photon_detuning = 0.0;
      p.field.drive_rabi = power_to_rabi(P, cfg.cal);
      powers.push_back(P);
      taus.push_back(delay_analytic(p).tau);
    }
    const auto fit = test::loglog_fit(powers, taus);
    CHECK(std::abs(fit.slope + 1.0) <= 0.05);
  }

  SUBCASE("linear advance off resonance") {
    std::vector<double> powers, advances;
    for (int i = 0; i < 12; ++i) {
      const double P = 50e-6 + (800e-6 - 50e-6) * i / 11.0;
      SystemParams p = cfg.params;
      p.field.one_photon_detuning = two_pi * 1.44e9;
      p.field.drive_rabi = power_to_rabi(P, cfg.cal);
      powers.push_back(P);
      advances.push_back(-delay_analytic(p).tau);
    }
    const auto fit = test::linear_fit(powers, advances);
    CHECK(fit.r2 >= 0.98);
    CHECK(fit.slope > 0.0);
  }
}

TEST_CASE("width and amplitude laws in the optically thin window") {
  const SimConfig& cfg = test::calibrated_config();
  SweepSpec spec{SweepAxis::total_power, 1e-6, 15e-6, 8, false};
  const auto rows = resonance_stats(cfg, two_pi * 1.44e9, spec);

  std::vector<double> powers, amps;
  for (const auto& r : rows) {
    REQUIRE(r.width_extracted.has_value());
    REQUIRE(r.amplitude.has_value());
    // extracted FWHM vs twice the width rate (rate is a half-width)
    CHECK(std::abs(*r.width_extracted - 2.0 * r.width_rate) <=
          0.15 * 2.0 * r.width_rate);
    powers.push_back(r.power_w);
    amps.push_back(*r.amplitude);
  }
  const auto fit = test::linear_fit(powers, amps);
  CHECK(fit.r2 >= 0.98);
  CHECK(fit.slope < 0.0);  // absorption dip deepens with power
}

TEST_CASE("phase budget") {
  CHECK(std::abs(phase_budget(0.3e-3, two_pi * 2.5e3)) ==
        doctest::Approx(4.712).epsilon(1e-3));
  CHECK(phase_budget(0.0, two_pi * 2.5e3) == 0.0);
  const double full = phase_budget(0.3e-3, two_pi * 2.5e3);
  CHECK(phase_budget(0.3e-3, pi * 2.5e3) == doctest::Approx(full / 2.0));
}

TEST_CASE("group index and velocity from the delay") {
  CHECK(group_index_from_delay(0.0, 0.025) == 1.0);
  const double ng = group_index_from_delay(-300e-6, 0.025);
  CHECK(ng > -3.7e6);
  CHECK(ng < -3.5e6);
  const DelayResult r = make_delay_result(-312.5e-6, DelayMethod::pulse_peak, 0.025);
  CHECK(r.group_velocity == doctest::Approx(-80.0).epsilon(1e-9));
  CHECK_THROWS_AS(group_index_from_delay(1e-6, 0.0), std::invalid_argument);
}

TEST_CASE("spectrum grid validation") {
  SystemParams p = default_params();
  p.field.drive_rabi = two_pi * 1e6;
  Eigen::ArrayXd bad(2);
  bad << 0.0, 1.0;
  CHECK_THROWS_AS(transmission_spectrum(p, bad), std::invalid_argument);
  Eigen::ArrayXd nonmono(3);
  nonmono << 0.0, 2.0, 1.0;
  CHECK_THROWS_AS(transmission_spectrum(p, nonmono), std::invalid_argument);
}
