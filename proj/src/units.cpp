#include "slowlight/units.hpp"

#include <stdexcept>

#include "slowlight/constants.hpp"

namespace slowlight {
namespace {

enum class Dimension { frequency, power, density, time, length };

struct UnitInfo {
  Dimension dim;
  double scale;  // multiplier to the dimension's SI-angular base unit
  const char* name;
};

UnitInfo info(Unit u) {
  switch (u) {
    case Unit::hertz:                return {Dimension::frequency, two_pi, "Hz"};
    case Unit::kilohertz:            return {Dimension::frequency, two_pi * 1e3, "kHz"};
    case Unit::gigahertz:            return {Dimension::frequency, two_pi * 1e9, "GHz"};
    case Unit::radians_per_second:   return {Dimension::frequency, 1.0, "rad/s"};
    case Unit::watt:                 return {Dimension::power, 1.0, "W"};
    case Unit::microwatt:            return {Dimension::power, 1e-6, "uW"};
    case Unit::per_cubic_centimeter: return {Dimension::density, 1e6, "cm^-3"};
    case Unit::per_cubic_meter:      return {Dimension::density, 1.0, "m^-3"};
    case Unit::second:               return {Dimension::time, 1.0, "s"};
    case Unit::microsecond:          return {Dimension::time, 1e-6, "us"};
    case Unit::meter:                return {Dimension::length, 1.0, "m"};
    case Unit::nanometer:            return {Dimension::length, 1e-9, "nm"};
  }
  throw std::invalid_argument("unknown unit");
}

}  // namespace

double convert(double value, Unit from, Unit to) {
  const UnitInfo f = info(from);
  const UnitInfo t = info(to);
  if (f.dim != t.dim) {
    throw std::invalid_argument(std::string("unsupported unit pair: ") + f.name +
                                " -> " + t.name);
  }
  if (from == to) return value;
  return value * (f.scale / t.scale);
}

const char* unit_name(Unit u) { return info(u).name; }

}  // namespace slowlight
