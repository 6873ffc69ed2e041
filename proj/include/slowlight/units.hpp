#pragma once

#include <string>

namespace slowlight {

// All internal computation uses SI with angular frequencies (rad/s).
// Conversions are applied only at I/O boundaries.
enum class Unit {
  hertz,
  kilohertz,
  gigahertz,
  radians_per_second,
  watt,
  microwatt,
  per_cubic_centimeter,
  per_cubic_meter,
  second,
  microsecond,
  meter,
  nanometer,
};

// Exact multiplicative conversion between units of the same dimension.
// Frequencies in ordinary units (Hz, kHz, GHz) convert to rad/s with a
// factor 2*pi. Throws std::invalid_argument for an unsupported pair.
double convert(double value, Unit from, Unit to);

const char* unit_name(Unit u);

}  // namespace slowlight
