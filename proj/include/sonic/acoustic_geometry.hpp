#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sonic/errors.hpp"
#include "sonic/finite_difference.hpp"
#include "sonic/flow_profile.hpp"
#include "sonic/units.hpp"

namespace sonic {

// ---------------------------------------------------------------------------
// Madelung fluid variables
// ---------------------------------------------------------------------------

struct MadelungFields {
  std::vector<double> density;   // |psi|^2
  std::vector<double> velocity;  // (hbar/m) d(phase)/dr
  std::vector<std::string> advisories;
};

/// Splits psi = sqrt(rho) exp(i S / hbar) into density and velocity
/// v = grad(S)/m. The phase is unwrapped before differentiation; increments
/// above pi/2 after unwrapping mean fewer than four samples per wavelength
/// and are reported as an advisory.
inline MadelungFields madelung_decompose(std::span<const double> grid,
                                         std::span<const std::complex<double>> psi,
                                         const UnitSystem& units = {},
                                         double amplitude_floor = 1e-12) {
  units.validate();
  if (grid.size() < 3) {
    detail::fail(ErrorKind::GridTooSmall, "madelung_decompose needs at least 3 samples");
  }
  if (grid.size() != psi.size()) {
    detail::fail(ErrorKind::InvalidProfile, "grid and wavefunction differ in length");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      detail::fail(ErrorKind::InvalidProfile, "grid must be strictly increasing");
    }
  }

  const std::size_t n = grid.size();
  MadelungFields out;
  out.density.resize(n);
  std::vector<double> phase(n);
  double max_step = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double amp = std::abs(psi[i]);
    if (amp < amplitude_floor) {
      detail::fail(ErrorKind::ZeroAmplitude,
                   "|psi| below floor at r = " + std::to_string(grid[i]) +
                       "; phase undefined");
    }
    out.density[i] = amp * amp;
    double p = std::arg(psi[i]);
    if (i > 0) {
      double step = p - phase[i - 1];
      step -= 2.0 * std::numbers::pi * std::round(step / (2.0 * std::numbers::pi));
      p = phase[i - 1] + step;
      max_step = std::max(max_step, std::abs(step));
    }
    phase[i] = p;
  }
  if (max_step > 0.5 * std::numbers::pi) {
    out.advisories.emplace_back(
        "phase increment exceeds pi/2 between samples; unwrapping may be ambiguous");
  }

  out.velocity = detail::gradient(grid, phase, 3);
  const double scale = units.hbar / units.mass;
  for (double& v : out.velocity) v *= scale;
  return out;
}

// ---------------------------------------------------------------------------
// Continuity check
// ---------------------------------------------------------------------------

struct StationarityReport {
  double residual = 0.0;      // max|d/dr(r^2 rho v)| / max|r^2 rho v|
  double worst_radius = 0.0;  // where the maximum is attained
  double tolerance = 1e-6;
  bool within_tolerance = true;
  bool advisory = false;  // profile not constructed as a continuity solution
  std::vector<double> pointwise;
};

/// Stationary spherical continuity, d/dr(r^2 rho0 v0) = 0, checked with
/// second-order differences on the profile grid. Only the power-law kind is
/// built to satisfy it; other kinds are reported as advisory.
inline StationarityReport validate_stationary_flow(const FlowProfile& profile,
                                                   double tolerance = 1e-6) {
  const auto& r = profile.grid();
  const std::size_t n = r.size();
  std::vector<double> flux(n);
  double flux_scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    flux[i] = r[i] * r[i] * profile.density()[i] * profile.velocity()[i];
    flux_scale = std::max(flux_scale, std::abs(flux[i]));
  }

  StationarityReport rep;
  rep.tolerance = tolerance;
  rep.pointwise = detail::gradient(r, flux, 3);
  std::size_t worst = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(rep.pointwise[i]) > std::abs(rep.pointwise[worst])) worst = i;
  }
  rep.worst_radius = r[worst];
  rep.residual = flux_scale > 0.0 ? std::abs(rep.pointwise[worst]) / flux_scale : 0.0;
  rep.within_tolerance = rep.residual <= tolerance;
  rep.advisory = profile.kind() != ProfileKind::power_law;
  return rep;
}

// ---------------------------------------------------------------------------
// Acoustic metric
// ---------------------------------------------------------------------------

/// Radial-temporal block of the acoustic line element (angular part dropped).
/// On the horizon g_tt is zero and g_rr is absent; on_horizon is set instead
/// of carrying an infinity.
struct MetricComponents {
  double radius = 0.0;
  double g_tt = 0.0;
  std::optional<double> g_rr;
  double conformal_factor = 0.0;  // rho0 / c
  double density = 0.0;           // rho0 used for the conformal factor
  bool on_horizon = false;
  bool beyond_expansion_range = false;  // near-horizon form used > 10% from r_H
};

/// Relative band |c^2 - v0^2| <= tol * c^2 treated as the horizon.
inline constexpr double kHorizonBand = 1e-12;

inline MetricComponents acoustic_metric_at(const FlowProfile& profile, double r) {
  const double c = profile.sound_speed();
  const double rho = profile.density_at(r);
  const double v = profile.velocity_at(r);
  const double gap = c * c - v * v;

  MetricComponents m;
  m.radius = r;
  m.density = rho;
  m.conformal_factor = rho / c;
  if (std::abs(gap) <= kHorizonBand * c * c) {
    m.on_horizon = true;
    m.g_tt = 0.0;
    return m;
  }
  m.g_tt = m.conformal_factor * gap;
  m.g_rr = -m.conformal_factor * c * c / gap;
  return m;
}

struct HorizonData {
  double radius = 0.0;
  double alpha = 0.0;        // |d|v0|/dr| at the horizon
  double temperature = 0.0;  // hbar alpha / (2 pi k_B)
  bool event_horizon = false;
  std::string units = "natural";
};

/// Schwarzschild-like near-horizon form with rho0 frozen at its horizon
/// value.
inline MetricComponents near_horizon_metric(const HorizonData& h, double rho0, double c,
                                            double r) {
  if (!(c > 0.0) || !(rho0 > 0.0) || !(h.alpha > 0.0)) {
    detail::fail(ErrorKind::InvalidProfile, "near_horizon_metric needs c, rho0, alpha > 0");
  }
  const double dr = r - h.radius;
  if (dr == 0.0) {
    detail::fail(ErrorKind::AtHorizon, "g_rr undefined at r = r_H");
  }
  MetricComponents m;
  m.radius = r;
  m.density = rho0;
  m.conformal_factor = rho0 / c;
  m.g_tt = m.conformal_factor * 2.0 * c * h.alpha * dr;
  m.g_rr = -m.conformal_factor * c / (2.0 * h.alpha * dr);
  m.beyond_expansion_range = std::abs(dr) > 0.1 * h.radius;
  return m;
}

// ---------------------------------------------------------------------------
// Horizon search
// ---------------------------------------------------------------------------

namespace detail {

/// Bisection on a sign change of f in [lo, hi] until the bracket stops
/// shrinking in floating point.
template <class F>
double bisect(F&& f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 400; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
}

inline int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace detail

/// All sonic points |v0| = c on the profile grid, sorted by radius; the
/// outermost is flagged as the acoustic event horizon.
inline std::vector<HorizonData> find_horizons(const FlowProfile& profile,
                                              const UnitSystem& units = {}) {
  const double c = profile.sound_speed();
  const auto& r = profile.grid();
  const std::size_t n = r.size();
  auto excess = [&](double x) { return std::abs(profile.velocity_at(x)) - c; };

  std::vector<double> f(n);
  std::vector<int> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    f[i] = std::abs(profile.velocity()[i]) - c;
    s[i] = detail::sign_of(f[i]);
  }

  std::vector<double> roots;
  bool touched = false;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (s[i] * s[i + 1] < 0) roots.push_back(detail::bisect(excess, r[i], r[i + 1]));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (s[i] != 0) continue;
    int before = 0, after = 0;
    for (std::size_t j = i; j-- > 0;) {
      if (s[j] != 0) { before = s[j]; break; }
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (s[j] != 0) { after = s[j]; break; }
    }
    if (before != 0 && before == after) {
      touched = true;
    } else if (i == 0 || s[i - 1] != 0) {
      roots.push_back(r[i]);
    }
  }

  if (roots.empty()) {
    double closest = std::abs(f[0]);
    for (double x : f) closest = std::min(closest, std::abs(x));
    if (touched || closest <= 1e-10 * c) {
      detail::fail(ErrorKind::NonTransonic, "flow touches the sound speed without crossing it");
    }
    detail::fail(ErrorKind::NoHorizon, "|v0| - c never changes sign on the profile grid");
  }
  std::sort(roots.begin(), roots.end());

  std::vector<HorizonData> out;
  for (double rh : roots) {
    if (std::abs(excess(rh)) >= 1e-10 * c) {
      detail::fail(ErrorKind::ConsistencyError, "horizon root did not converge");
    }
    const double alpha = std::abs(profile.speed_slope_at(rh));
    if (!(alpha > 0.0)) {
      detail::fail(ErrorKind::NonTransonic, "zero velocity gradient at the sonic point");
    }
    HorizonData h;
    h.radius = rh;
    h.alpha = alpha;
    h.temperature = hawking_temperature(alpha, units);
    h.units = units.name;
    out.push_back(h);
  }
  out.back().event_horizon = true;
  return out;
}

/// The outermost horizon.
inline HorizonData find_horizon(const FlowProfile& profile, const UnitSystem& units = {}) {
  return find_horizons(profile, units).back();
}

}  // namespace sonic
