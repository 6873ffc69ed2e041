#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "slowlight/config.hpp"
#include "slowlight/constants.hpp"
#include "slowlight/errors.hpp"
#include "slowlight/params.hpp"

using namespace slowlight;

TEST_CASE("experiment defaults") {
  const SystemParams p = default_params();
  CHECK(p.cell.density == doctest::Approx(4.7e17).epsilon(1e-14));
  CHECK(p.cell.length == doctest::Approx(0.025).epsilon(1e-14));
  CHECK(p.field.probe_power_fraction == doctest::Approx(0.07).epsilon(1e-14));
  CHECK(p.atom.wavelength == doctest::Approx(795e-9).epsilon(1e-14));
  CHECK(p.atom.radiative_rate == doctest::Approx(two_pi * 5.75e6).epsilon(1e-14));
  CHECK(p.atom.optical_decay == doctest::Approx(two_pi * 100e6).epsilon(1e-14));
  CHECK(p.atom.ground_decay == doctest::Approx(two_pi * 1e3).epsilon(1e-14));
  CHECK_NOTHROW(p.validate());
}

TEST_CASE("power_to_rabi") {
  const Calibration cal{7.7e8, two_pi * 1e3};
  CHECK(power_to_rabi(0.0, cal) == 0.0);
  const double base = power_to_rabi(1e-4, cal);
  CHECK(power_to_rabi(4e-4, cal) == doctest::Approx(2.0 * base).epsilon(1e-14));
  CHECK_THROWS_AS(power_to_rabi(-1e-6, cal), std::domain_error);

  SUBCASE("square-root homogeneity and monotonicity") {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> upow(1e-7, 1e-2);
    std::uniform_real_distribution<double> uscale(0.1, 50.0);
    double prev_p = 0.0, prev_o = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double P = upow(rng);
      const double a = uscale(rng);
      const double lhs = power_to_rabi(a * P, cal);
      const double rhs = std::sqrt(a) * power_to_rabi(P, cal);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * rhs);
      if (P > prev_p) CHECK(power_to_rabi(P, cal) > prev_o);
      prev_p = P;
      prev_o = power_to_rabi(P, cal);
    }
  }

  SUBCASE("closed-form slow-light anchor") {
    // k chosen so that the slow asymptote gives 370 us at 145 uW
    const SystemParams p = default_params();
    const double scale = 3.0 / (8.0 * pi) * p.cell.density * p.atom.wavelength *
                         p.atom.wavelength * p.cell.length * p.atom.radiative_rate;
    const double k = std::sqrt(scale / (145e-6 * 370e-6));
    const double omega = power_to_rabi(145e-6, Calibration{k, p.atom.ground_decay});
    CHECK(scale / (omega * omega) == doctest::Approx(370e-6).epsilon(1e-12));
  }
}

TEST_CASE("probe rabi follows the power fraction") {
  SystemParams p = default_params();
  p.field.drive_rabi = 2e6;
  const double a = probe_rabi(p);
  CHECK(a * a / (p.field.drive_rabi * p.field.drive_rabi) ==
        doctest::Approx(0.07).epsilon(1e-12));
}

TEST_CASE("validation rejects unphysical parameters") {
  SystemParams p = default_params();
  p.field.probe_power_fraction = 0.6;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = default_params();
  p.atom.optical_decay = p.atom.radiative_rate / 4.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = default_params();
  p.atom.ground_decay = 2.0 * p.atom.optical_decay;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("config parsing") {
  SUBCASE("empty stream gives defaults") {
    std::istringstream in("");
    const SimConfig cfg = parse_config(in);
    CHECK(cfg.total_power_w == doctest::Approx(400e-6));
    CHECK(cfg.params.field.drive_rabi ==
          doctest::Approx(cfg.cal.k_rabi * std::sqrt(400e-6)).epsilon(1e-14));
  }

  SUBCASE("all keys") {
    std::istringstream in(
        "lambda_nm = 795\n"
        "cell_length_cm = 2.5\n"
        "density_cm3 = 4.7e11\n"
        "gamma_r_hz = 5.75e6\n"
        "gamma_hz = 1e8\n"
        "gamma0_hz = 2500   # comment\n"
        "doppler_width_hz = 5e8\n"
        "probe_fraction = 0.07\n"
        "k_rabi = 7.5e8\n"
        "total_power_uw = 145\n"
        "delta_one_photon_ghz = 1.45\n");
    const SimConfig cfg = parse_config(in);
    CHECK(cfg.params.atom.ground_decay == doctest::Approx(two_pi * 2500).epsilon(1e-14));
    CHECK(cfg.cal.gamma_0_fit == doctest::Approx(two_pi * 2500).epsilon(1e-14));
    CHECK(cfg.params.field.one_photon_detuning ==
          doctest::Approx(two_pi * 1.45e9).epsilon(1e-14));
    CHECK(cfg.total_power_w == doctest::Approx(145e-6).epsilon(1e-14));
    CHECK(cfg.params.field.drive_rabi ==
          doctest::Approx(7.5e8 * std::sqrt(145e-6)).epsilon(1e-14));
  }

  SUBCASE("unknown key is a hard error") {
    std::istringstream in("gamma0_khz = 2.5\n");
    CHECK_THROWS_AS(parse_config(in), ConfigError);
  }
  SUBCASE("duplicate key") {
    std::istringstream in("k_rabi = 1e9\nk_rabi = 2e9\n");
    CHECK_THROWS_AS(parse_config(in), ConfigError);
  }
  SUBCASE("malformed number") {
    std::istringstream in("k_rabi = fast\n");
    CHECK_THROWS_AS(parse_config(in), ConfigError);
  }
  SUBCASE("missing equals sign") {
    std::istringstream in("k_rabi 1e9\n");
    CHECK_THROWS_AS(parse_config(in), ConfigError);
  }
}

TEST_CASE("config write/load round trip") {
  SimConfig cfg = default_config();
  cfg.cal.k_rabi = 7.56628e8;
  cfg.params.atom.ground_decay = 21957.6;
  cfg.cal.gamma_0_fit = 21957.6;
  set_total_power(cfg, 700e-6);
  cfg.params.field.one_photon_detuning = two_pi * 1.45e9;

  const std::string path = "roundtrip_config.txt";
  write_config(cfg, path);
  const SimConfig back = load_config(path);
  CHECK(back.cal.k_rabi == doctest::Approx(cfg.cal.k_rabi).epsilon(1e-10));
  CHECK(back.params.atom.ground_decay ==
        doctest::Approx(cfg.params.atom.ground_decay).epsilon(1e-10));
  CHECK(back.total_power_w == doctest::Approx(cfg.total_power_w).epsilon(1e-10));
  CHECK(back.params.field.one_photon_detuning ==
        doctest::Approx(cfg.params.field.one_photon_detuning).epsilon(1e-10));
  std::remove(path.c_str());
}
