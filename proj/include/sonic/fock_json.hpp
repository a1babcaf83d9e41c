#pragma once

// JSON shape for fixtures and CLI output:
//   FockVector   {"cutoff": N, "amplitudes": [[re, im], ...]}
//   TwoModeState {"cutoff": N, "amplitudes": [[[re, im], ...], ...]}  (row = mode I)

#include <json.hpp>

#include "sonic/errors.hpp"
#include "sonic/fock_space.hpp"

namespace sonic {

namespace detail {

inline nlohmann::json complex_to_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) {
    detail::fail(ErrorKind::ParseError, "amplitude must be a [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

inline std::size_t checked_cutoff(const nlohmann::json& j, std::size_t rows) {
  const auto cutoff = j.at("cutoff").get<std::size_t>();
  if (cutoff + 1 != rows) {
    detail::fail(ErrorKind::ParseError, "cutoff does not match the amplitude count");
  }
  return cutoff;
}

/// Runs a reader, reporting nlohmann type and key errors as ParseError.
template <class Fn>
auto translate_json_errors(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const nlohmann::json::exception& e) {
    detail::fail(ErrorKind::ParseError, e.what());
  }
}

}  // namespace detail

inline nlohmann::json to_json(const FockVector& v) {
  nlohmann::json amps = nlohmann::json::array();
  for (std::size_t n = 0; n < v.dimension(); ++n) amps.push_back(detail::complex_to_json(v[n]));
  return {{"cutoff", v.cutoff()}, {"amplitudes", std::move(amps)}};
}

inline FockVector fock_vector_from_json(const nlohmann::json& j) {
  return detail::translate_json_errors([&] {
    const auto& amps = j.at("amplitudes");
    detail::checked_cutoff(j, amps.size());
    CVector v(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t n = 0; n < amps.size(); ++n) {
      v(static_cast<Eigen::Index>(n)) = detail::complex_from_json(amps[n]);
    }
    return FockVector(std::move(v));
  });
}

inline nlohmann::json to_json(const TwoModeState& s) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t m = 0; m <= s.cutoff(); ++m) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t n = 0; n <= s.cutoff(); ++n) row.push_back(detail::complex_to_json(s(m, n)));
    rows.push_back(std::move(row));
  }
  return {{"cutoff", s.cutoff()}, {"amplitudes", std::move(rows)}};
}

inline TwoModeState two_mode_state_from_json(const nlohmann::json& j) {
  return detail::translate_json_errors([&] {
    const auto& rows = j.at("amplitudes");
    detail::checked_cutoff(j, rows.size());
    const auto dim = static_cast<Eigen::Index>(rows.size());
    CMatrix c(dim, dim);
    for (Eigen::Index m = 0; m < dim; ++m) {
      const auto& row = rows[static_cast<std::size_t>(m)];
      if (row.size() != rows.size()) detail::fail(ErrorKind::ParseError, "amplitude matrix not square");
      for (Eigen::Index n = 0; n < dim; ++n) {
        c(m, n) = detail::complex_from_json(row[static_cast<std::size_t>(n)]);
      }
    }
    return TwoModeState(std::move(c));
  });
}

}  // namespace sonic
