#pragma once

#include <cmath>
#include <numbers>

#include "sonic/errors.hpp"

namespace sonic {

/// Two-mode squeeze produced by a horizon of surface gravity alpha acting on
/// a mode of angular frequency omega: tanh r = exp(-pi omega / alpha), so that
/// sinh^2 r is the Planck occupation 1/(exp(2 pi omega/alpha) - 1).
struct SqueezeSpec {
  double omega = 0.0;
  double alpha = 0.0;
  double r = 0.0;
  double tanh_r = 0.0;  // exp(-pi omega/alpha), stored exactly
  double cosh_r = 1.0;  // (1 - exp(-2 pi omega/alpha))^(-1/2)
  double sinh_r = 0.0;
};

namespace detail {

inline void check_mode(double omega, double alpha) {
  if (!(omega > 0.0)) detail::fail(ErrorKind::NonPositiveFrequency, "omega must be > 0");
  if (!(alpha > 0.0)) detail::fail(ErrorKind::NonPositiveAlpha, "alpha must be > 0");
}

/// atanh(exp(-x)) evaluated literally; loses accuracy as x -> 0 and is kept
/// only to cross-check the stable form.
inline double naive_squeeze_parameter(double omega, double alpha) {
  check_mode(omega, alpha);
  return std::atanh(std::exp(-std::numbers::pi * omega / alpha));
}

}  // namespace detail

/// r = atanh(e^{-x}) = -1/2 ln tanh(x/2), x = pi omega / alpha. For x >= 1
/// the logarithm is taken as log1p(-2 e^{-x} / (1 + e^{-x})) so that r keeps
/// full relative precision when it is tiny.
inline SqueezeSpec squeeze_parameter(double omega, double alpha) {
  detail::check_mode(omega, alpha);
  const double x = std::numbers::pi * omega / alpha;
  SqueezeSpec s;
  s.omega = omega;
  s.alpha = alpha;
  if (x < 1.0) {
    s.r = -0.5 * std::log(std::tanh(0.5 * x));
  } else {
    const double e = std::exp(-x);
    s.r = -0.5 * std::log1p(-2.0 * e / (1.0 + e));
  }
  s.tanh_r = std::exp(-x);
  s.cosh_r = 1.0 / std::sqrt(-std::expm1(-2.0 * x));
  s.sinh_r = s.tanh_r * s.cosh_r;
  return s;
}

struct BogoliubovPair {
  double u = 1.0;  // cosh r, coefficient of d
  double v = 0.0;  // sinh r, coefficient of the partner creation operator
};

inline BogoliubovPair bogoliubov_pair(double r) {
  if (!(r >= 0.0)) detail::fail(ErrorKind::NegativeSqueeze, "squeeze parameter must be >= 0");
  BogoliubovPair p{std::cosh(r), std::sinh(r)};
  // (u - v)(u + v) avoids cancelling two large squares
  if (std::abs((p.u - p.v) * (p.u + p.v) - 1.0) > 1e-12 * p.u * p.u) {
    detail::fail(ErrorKind::ConsistencyError, "u^2 - v^2 != 1");
  }
  return p;
}

inline BogoliubovPair bogoliubov_pair(const SqueezeSpec& spec) {
  return bogoliubov_pair(spec.r);
}

/// Planck occupation 1/(exp(2 pi omega/alpha) - 1), checked against
/// sinh^2 r of the same mode.
inline double mean_occupation(double omega, double alpha) {
  detail::check_mode(omega, alpha);
  const double nbar = 1.0 / std::expm1(2.0 * std::numbers::pi * omega / alpha);
  const double sh = std::sinh(squeeze_parameter(omega, alpha).r);
  if (nbar > 0.0 && std::abs(sh * sh - nbar) > 1e-12 * nbar) {
    detail::fail(ErrorKind::ConsistencyError, "mean occupation disagrees with sinh^2 r");
  }
  return nbar;
}

}  // namespace sonic
