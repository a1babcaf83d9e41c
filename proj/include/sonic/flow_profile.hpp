#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sonic/errors.hpp"
#include "sonic/finite_difference.hpp"

namespace sonic {

/// Near-horizon expansion v0(r) = -c + alpha (r - R), valid close to R.
struct LinearFlow {
  double sound_speed = 1.0;
  double radius = 1.0;
  double surface_gravity = 1.0;
  bool operator==(const LinearFlow&) const = default;
};

/// Convergent flow v0(r) = -c (R / r)^exponent; exponent 2 with constant
/// density is an exact stationary continuity solution.
struct PowerLawFlow {
  double sound_speed = 1.0;
  double radius = 1.0;
  double exponent = 2.0;
  bool operator==(const PowerLawFlow&) const = default;
};

struct TabulatedFlow {
  bool operator==(const TabulatedFlow&) const = default;
};

enum class ProfileKind { linear, power_law, tabulated };

/// Radial background flow: density, signed velocity (negative = infalling)
/// and a constant sound speed sampled on a strictly increasing grid.
/// Analytic kinds evaluate exactly off-grid; tabulated data is interpolated
/// with local cubics.
class FlowProfile {
 public:
  static FlowProfile linear(const LinearFlow& p, double density, double r_min,
                            double r_max, std::size_t points = 2001) {
    if (!(p.surface_gravity > 0.0) || !(p.radius > 0.0)) {
      detail::fail(ErrorKind::InvalidProfile,
                   "linear profile needs radius > 0 and surface_gravity > 0");
    }
    FlowProfile f(p.sound_speed, p);
    f.fill_analytic(density, r_min, r_max, points);
    return f;
  }

  /// Default domain R +- min(c/alpha, R/2): v0 stays in [-2c, 0] so the only
  /// sonic point is R itself.
  static FlowProfile linear(const LinearFlow& p, double density = 1.0,
                            std::size_t points = 2001) {
    const double half =
        std::min(p.sound_speed / p.surface_gravity, 0.5 * p.radius);
    return linear(p, density, p.radius - half, p.radius + half, points);
  }

  static FlowProfile power_law(const PowerLawFlow& p, double density, double r_min,
                               double r_max, std::size_t points = 2001) {
    if (!(p.radius > 0.0) || !(p.exponent > 0.0)) {
      detail::fail(ErrorKind::InvalidProfile,
                   "power-law profile needs radius > 0 and exponent > 0");
    }
    FlowProfile f(p.sound_speed, p);
    f.fill_analytic(density, r_min, r_max, points);
    return f;
  }

  static FlowProfile power_law(const PowerLawFlow& p, double density = 1.0,
                               std::size_t points = 2001) {
    return power_law(p, density, 0.5 * p.radius, 2.0 * p.radius, points);
  }

  static FlowProfile tabulated(std::vector<double> grid, std::vector<double> density,
                               std::vector<double> velocity, double sound_speed) {
    FlowProfile f(sound_speed, TabulatedFlow{});
    if (grid.size() != density.size() || grid.size() != velocity.size()) {
      detail::fail(ErrorKind::InvalidProfile, "profile columns differ in length");
    }
    if (grid.size() < 5) {
      detail::fail(ErrorKind::GridTooSmall, "tabulated profile needs at least 5 samples");
    }
    f.grid_ = std::move(grid);
    f.density_ = std::move(density);
    f.velocity_ = std::move(velocity);
    f.validate_samples();
    f.velocity_slope_ = detail::gradient(f.grid_, f.velocity_, 5);
    f.density_const_ = 0.0;
    return f;
  }

  ProfileKind kind() const {
    return static_cast<ProfileKind>(params_.index());
  }
  double sound_speed() const { return sound_speed_; }
  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& density() const { return density_; }
  const std::vector<double>& velocity() const { return velocity_; }
  double r_min() const { return grid_.front(); }
  double r_max() const { return grid_.back(); }

  const LinearFlow* linear_parameters() const { return std::get_if<LinearFlow>(&params_); }
  const PowerLawFlow* power_law_parameters() const {
    return std::get_if<PowerLawFlow>(&params_);
  }

  double velocity_at(double r) const {
    check_domain(r);
    if (const auto* p = linear_parameters()) {
      return -p->sound_speed + p->surface_gravity * (r - p->radius);
    }
    if (const auto* p = power_law_parameters()) {
      return -p->sound_speed * std::pow(p->radius / r, p->exponent);
    }
    return detail::cubic_interpolate(grid_, velocity_, r);
  }

  double density_at(double r) const {
    check_domain(r);
    if (kind() != ProfileKind::tabulated) return density_const_;
    return detail::cubic_interpolate(grid_, density_, r);
  }

  /// dv0/dr: analytic for analytic kinds, otherwise fourth-order central
  /// differences at the nodes interpolated to r.
  double velocity_slope_at(double r) const {
    check_domain(r);
    if (const auto* p = linear_parameters()) return p->surface_gravity;
    if (const auto* p = power_law_parameters()) {
      return p->sound_speed * p->exponent * std::pow(p->radius / r, p->exponent) / r;
    }
    return detail::cubic_interpolate(grid_, velocity_slope_, r);
  }

  /// d|v0|/dr.
  double speed_slope_at(double r) const {
    const double v = velocity_at(r);
    const double dv = velocity_slope_at(r);
    return v < 0.0 ? -dv : dv;
  }

 private:
  using Parameters = std::variant<LinearFlow, PowerLawFlow, TabulatedFlow>;

  FlowProfile(double sound_speed, Parameters params)
      : sound_speed_(sound_speed), params_(params) {
    if (!(sound_speed > 0.0) || !std::isfinite(sound_speed)) {
      detail::fail(ErrorKind::InvalidProfile, "sound speed must be > 0");
    }
  }

  void fill_analytic(double density, double r_min, double r_max, std::size_t points) {
    if (points < 5) {
      detail::fail(ErrorKind::GridTooSmall, "profile grid needs at least 5 points");
    }
    if (!(r_min > 0.0) || !(r_max > r_min)) {
      detail::fail(ErrorKind::InvalidProfile, "profile domain must satisfy 0 < r_min < r_max");
    }
    density_const_ = density;
    grid_.resize(points);
    density_.assign(points, density);
    velocity_.resize(points);
    const double h = (r_max - r_min) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
      grid_[i] = i + 1 == points ? r_max : r_min + h * static_cast<double>(i);
    }
    for (std::size_t i = 0; i < points; ++i) velocity_[i] = velocity_at(grid_[i]);
    validate_samples();
  }

  void validate_samples() const {
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      if (!(grid_[i] > 0.0) || !std::isfinite(grid_[i])) {
        detail::fail(ErrorKind::InvalidProfile, "grid radii must be positive and finite");
      }
      if (i > 0 && !(grid_[i] > grid_[i - 1])) {
        detail::fail(ErrorKind::InvalidProfile, "grid must be strictly increasing");
      }
      if (!(density_[i] > 0.0) || !std::isfinite(density_[i])) {
        detail::fail(ErrorKind::InvalidProfile, "density must be strictly positive");
      }
      if (!std::isfinite(velocity_[i])) {
        detail::fail(ErrorKind::InvalidProfile, "velocity must be finite");
      }
    }
  }

  void check_domain(double r) const {
    if (!(r > 0.0) || !std::isfinite(r)) {
      detail::fail(ErrorKind::OutOfDomain, "radius must be positive and finite");
    }
    if (kind() == ProfileKind::tabulated && (r < grid_.front() || r > grid_.back())) {
      detail::fail(ErrorKind::OutOfDomain, "radius " + std::to_string(r) +
                                               " outside tabulated domain");
    }
  }

  double sound_speed_;
  Parameters params_;
  double density_const_ = 1.0;
  std::vector<double> grid_;
  std::vector<double> density_;
  std::vector<double> velocity_;
  std::vector<double> velocity_slope_;
};

/// Reads whitespace-separated (r, rho0, v0) rows; '#' starts a comment line.
inline FlowProfile read_profile_table(std::istream& in, double sound_speed) {
  std::vector<double> r, rho, v;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    double a = 0, b = 0, c = 0;
    std::string extra;
    if (!(row >> a >> b >> c) || (row >> extra)) {
      detail::fail(ErrorKind::InvalidProfile,
                   "profile line " + std::to_string(line_no) + ": expected 3 numeric columns");
    }
    r.push_back(a);
    rho.push_back(b);
    v.push_back(c);
  }
  return FlowProfile::tabulated(std::move(r), std::move(rho), std::move(v), sound_speed);
}

inline FlowProfile read_profile_table(const std::string& path, double sound_speed) {
  std::ifstream in(path);
  if (!in) detail::fail(ErrorKind::IoError, "cannot open profile file '" + path + "'");
  return read_profile_table(in, sound_speed);
}

}  // namespace sonic
