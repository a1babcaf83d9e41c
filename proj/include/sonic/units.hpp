#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "sonic/errors.hpp"

namespace sonic {

/// Physical constants that fix the unit system of every temperature and
/// frequency the library reports. Natural units set all three to one.
struct UnitSystem {
  std::string name = "natural";
  double hbar = 1.0;       // action
  double boltzmann = 1.0;  // energy / temperature
  double mass = 1.0;       // particle mass in v = grad(S)/m

  static UnitSystem natural() { return {}; }

  /// CODATA 2018 exact values; mass stays at 1 kg unless the caller sets it.
  static UnitSystem si() {
    return {"SI", 1.054571817e-34, 1.380649e-23, 1.0};
  }

  void validate() const {
    if (!(hbar > 0.0) || !(boltzmann > 0.0) || !(mass > 0.0)) {
      detail::fail(ErrorKind::InvalidUnits,
                   "unit constants must be strictly positive");
    }
  }

  std::string temperature_unit() const { return name == "SI" ? "K" : "natural"; }
  std::string rate_unit() const { return name == "SI" ? "1/s" : "natural"; }

  bool operator==(const UnitSystem&) const = default;
};

/// T = hbar * alpha / (2 pi k_B).
inline double hawking_temperature(double alpha, const UnitSystem& units = {}) {
  units.validate();
  if (!(alpha > 0.0)) {
    detail::fail(ErrorKind::NonPositiveAlpha, "surface gravity must be > 0");
  }
  return units.hbar * alpha / (2.0 * std::numbers::pi * units.boltzmann);
}

/// Inverse of hawking_temperature.
inline double alpha_for_temperature(double temperature, const UnitSystem& units = {}) {
  units.validate();
  if (!(temperature > 0.0)) {
    detail::fail(ErrorKind::NonPositiveTemperature, "temperature must be > 0");
  }
  return 2.0 * std::numbers::pi * units.boltzmann * temperature / units.hbar;
}

}  // namespace sonic
