#include "slowlight/csv.hpp"

#include <cstdio>
#include <iostream>

#include "slowlight/constants.hpp"
#include "slowlight/errors.hpp"

namespace slowlight {

std::string format_sig9(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path) {
  if (path == "-") {
    out_ = &std::cout;
    return;
  }
  file_ = std::make_unique<std::ofstream>(path);
  if (!*file_) throw ConfigError("cannot open output file: " + path);
  out_ = file_.get();
}

void CsvWriter::comment(const std::string& text) { *out_ << "# " << text << '\n'; }

void CsvWriter::header(const std::vector<std::string>& columns) {
  row(columns);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) *out_ << ',';
    *out_ << cells[i];
  }
  *out_ << '\n';
}

void CsvWriter::error_marker(const std::string& message) {
  *out_ << "# error: " << message << '\n';
  out_->flush();
}

std::ostream& CsvWriter::stream() { return *out_; }

void echo_config(CsvWriter& w, const SimConfig& cfg) {
  const auto& p = cfg.params;
  w.comment("lambda_nm = " + format_sig9(p.atom.wavelength / 1e-9));
  w.comment("cell_length_cm = " + format_sig9(p.cell.length / 1e-2));
  w.comment("density_cm3 = " + format_sig9(p.cell.density / 1e6));
  w.comment("gamma_r_hz = " + format_sig9(p.atom.radiative_rate / two_pi));
  w.comment("gamma_hz = " + format_sig9(p.atom.optical_decay / two_pi));
  w.comment("gamma0_hz = " + format_sig9(p.atom.ground_decay / two_pi));
  w.comment("doppler_width_hz = " + format_sig9(p.atom.doppler_width / two_pi));
  w.comment("probe_fraction = " + format_sig9(p.field.probe_power_fraction));
  w.comment("k_rabi = " + format_sig9(cfg.cal.k_rabi));
  w.comment("total_power_uw = " + format_sig9(cfg.total_power_w / 1e-6));
  w.comment("delta_one_photon_ghz = " +
            format_sig9(p.field.one_photon_detuning / (two_pi * 1e9)));
}

}  // namespace slowlight
