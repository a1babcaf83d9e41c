#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "sonic/fock_space.hpp"
#include "sonic/squeeze_map.hpp"
#include "sonic/teleport.hpp"
#include "sonic/units.hpp"

namespace sonic {

enum class SweepAxis { alpha, temperature };

struct SweepRequest {
  Complex amplitude{1.0, 0.0};
  double omega = 1.0;
  SweepAxis axis = SweepAxis::alpha;
  std::vector<double> grid;
  UnitSystem units;
  std::optional<std::size_t> cutoff;  // empty: automatic per row
  double epsilon = 1e-12;
};

struct SweepRow {
  double alpha = 0.0;
  double temperature = 0.0;
  double r = 0.0;
  double nbar = 0.0;
  double fidelity_analytic = 0.0;
  double fidelity_simulated = 0.0;
  double probability_zero = 0.0;
  std::size_t cutoff = 0;
};

/// Cutoff meeting both the coherent-target tail and the squeezed-resource
/// tail, capped at kMaxCutoff.
inline std::size_t auto_cutoff(Complex amplitude, double r, double epsilon = 1e-12) {
  return std::max(coherent_cutoff(amplitude, epsilon), squeezed_cutoff(r, epsilon));
}

inline SweepRow sweep_row(const SweepRequest& req, double value) {
  SweepRow row;
  if (req.axis == SweepAxis::alpha) {
    row.alpha = value;
    row.temperature = hawking_temperature(value, req.units);
  } else {
    row.temperature = value;
    row.alpha = alpha_for_temperature(value, req.units);
  }
  const SqueezeSpec sq = squeeze_parameter(req.omega, row.alpha);
  row.r = sq.r;
  row.nbar = mean_occupation(req.omega, row.alpha);
  row.cutoff = req.cutoff ? *req.cutoff : auto_cutoff(req.amplitude, sq.r, req.epsilon);

  const FockVector target =
      coherent_state({req.amplitude, row.cutoff, req.epsilon}).state;
  const TeleportOutcome zero = mb_conditional(target, sq.r, 0, +1, row.cutoff);
  row.fidelity_analytic = analytic_fidelity_zero(req.amplitude, sq.r);
  row.fidelity_simulated = zero.fidelity;
  row.probability_zero = zero.probability;
  return row;
}

/// One row per grid value, in grid order: Hawking temperature, squeeze,
/// occupation, and the zero-outcome fidelity both from the closed form and
/// from the simulated protocol.
inline std::vector<SweepRow> fidelity_temperature_sweep(const SweepRequest& req) {
  if (req.grid.empty()) detail::fail(ErrorKind::ValidationError, "sweep grid is empty");
  std::vector<SweepRow> rows;
  rows.reserve(req.grid.size());
  for (double v : req.grid) {
    if (!(v > 0.0)) detail::fail(ErrorKind::ValidationError, "sweep grid values must be > 0");
    rows.push_back(sweep_row(req, v));
  }
  return rows;
}

}  // namespace sonic
