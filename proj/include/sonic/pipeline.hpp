#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "sonic/acoustic_geometry.hpp"
#include "sonic/config.hpp"
#include "sonic/errors.hpp"
#include "sonic/fock_json.hpp"
#include "sonic/fock_space.hpp"
#include "sonic/squeeze_map.hpp"
#include "sonic/sweep.hpp"
#include "sonic/teleport.hpp"

namespace sonic {

inline constexpr std::string_view kToolName = "sonic-teleport";
inline constexpr std::string_view kToolVersion = "0.1.0";

enum class Command { horizon, spectrum, squeeze, entangle, teleport, sweep };

inline std::optional<Command> parse_command(std::string_view s) {
  if (s == "horizon") return Command::horizon;
  if (s == "spectrum") return Command::spectrum;
  if (s == "squeeze") return Command::squeeze;
  if (s == "entangle") return Command::entangle;
  if (s == "teleport") return Command::teleport;
  if (s == "sweep") return Command::sweep;
  return std::nullopt;
}

inline std::string_view command_name(Command c) {
  switch (c) {
    case Command::horizon: return "horizon";
    case Command::spectrum: return "spectrum";
    case Command::squeeze: return "squeeze";
    case Command::entangle: return "entangle";
    case Command::teleport: return "teleport";
    case Command::sweep: return "sweep";
  }
  return "";
}

using Cell = std::variant<double, std::int64_t, std::string>;

/// Emitted artifact: ordered metadata, named columns with units, rows.
struct Table {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::string> units;
  std::vector<std::vector<Cell>> rows;
  nlohmann::json extra;  // JSON-only payload (e.g. state amplitudes)
};

namespace detail {

inline std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

inline nlohmann::json cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  return std::get<std::string>(c);
}

}  // namespace detail

/// '#'-prefixed metadata lines, a units line, the header, then rows at 17
/// significant digits.
inline std::string to_csv(const Table& t) {
  std::ostringstream out;
  for (const auto& [k, v] : t.metadata) out << "# " << k << ": " << v << "\n";
  out << "# units:";
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    out << (i ? ", " : " ") << t.columns[i] << "=" << t.units[i];
  }
  out << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << detail::cell_text(row[i]);
    out << "\n";
  }
  return out.str();
}

inline std::string to_json_text(const Table& t) {
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.metadata) {
    // repeated keys (the config echo) become an array in emission order
    if (!meta.contains(k)) {
      meta[k] = v;
    } else {
      if (!meta[k].is_array()) meta[k] = nlohmann::ordered_json::array({meta[k]});
      meta[k].push_back(v);
    }
  }
  nlohmann::ordered_json units = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < t.columns.size(); ++i) units[t.columns[i]] = t.units[i];
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json rec = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) rec[t.columns[i]] = detail::cell_json(row[i]);
    records.push_back(std::move(rec));
  }
  nlohmann::ordered_json doc = {{"metadata", meta}, {"units", units}, {"records", records}};
  if (!t.extra.is_null()) doc["extra"] = t.extra;
  return doc.dump(2) + "\n";
}

namespace detail {

inline FlowProfile build_profile(const ProfileConfig& p, const std::filesystem::path& base_dir) {
  switch (p.kind) {
    case ProfileKind::linear: {
      const LinearFlow flow{p.sound_speed, p.radius, p.surface_gravity};
      return p.domain ? FlowProfile::linear(flow, p.density, p.domain->first, p.domain->second, p.points)
                      : FlowProfile::linear(flow, p.density, p.points);
    }
    case ProfileKind::power_law: {
      const PowerLawFlow flow{p.sound_speed, p.radius, p.exponent};
      return p.domain ? FlowProfile::power_law(flow, p.density, p.domain->first, p.domain->second, p.points)
                      : FlowProfile::power_law(flow, p.density, p.points);
    }
    case ProfileKind::tabulated: {
      std::filesystem::path file(p.file);
      if (file.is_relative()) file = base_dir / file;
      return read_profile_table(file.string(), p.sound_speed);
    }
  }
  fail(ErrorKind::InvalidProfile, "unknown profile kind");
}

class Runner {
 public:
  Runner(const RunConfig& cfg, std::filesystem::path base_dir)
      : cfg_(cfg), units_(cfg.units()), base_dir_(std::move(base_dir)) {}

  Table run(Command cmd) {
    Table t;
    t.metadata = {{"tool", std::string(kToolName)},
                  {"version", std::string(kToolVersion)},
                  {"command", std::string(command_name(cmd))},
                  {"unit_system", units_.name}};
    switch (cmd) {
      case Command::horizon: horizon(t); break;
      case Command::spectrum: spectrum(t); break;
      case Command::squeeze: squeeze(t); break;
      case Command::entangle: entangle(t); break;
      case Command::teleport: teleport(t); break;
      case Command::sweep: sweep(t); break;
    }
    std::istringstream echo(emit_config(cfg_));
    std::string line;
    while (std::getline(echo, line)) {
      if (!line.empty()) t.metadata.emplace_back("config", line);
    }
    return t;
  }

 private:
  std::string rate() const { return units_.rate_unit(); }
  std::string temp() const { return units_.temperature_unit(); }

  double omega() const {
    if (!cfg_.omega) invalid("omega", "is required for this command");
    return *cfg_.omega;
  }

  Complex target() const {
    if (!cfg_.target) invalid("target", "is required for this command");
    return *cfg_.target;
  }

  /// Surface gravity from alpha, temperature or the profile's event horizon.
  double alpha(Table& t) const {
    double a = 0.0;
    std::string source;
    if (cfg_.alpha) {
      a = *cfg_.alpha;
      source = "alpha";
    } else if (cfg_.temperature) {
      a = alpha_for_temperature(*cfg_.temperature, units_);
      source = "temperature";
    } else if (cfg_.profile) {
      a = find_horizon(build_profile(*cfg_.profile, base_dir_), units_).alpha;
      source = "profile event horizon";
    } else {
      invalid("alpha", "one of alpha, temperature or [profile] is required for this command");
    }
    t.metadata.emplace_back("alpha", format_double(a) + " " + rate() + " (from " + source + ")");
    t.metadata.emplace_back("hawking_temperature",
                            format_double(hawking_temperature(a, units_)) + " " + temp());
    return a;
  }

  std::size_t cutoff_for(double r, std::optional<Complex> amplitude) const {
    if (cfg_.cutoff) return *cfg_.cutoff;
    std::size_t n = squeezed_cutoff(r, cfg_.epsilon);
    if (amplitude) n = std::max(n, coherent_cutoff(*amplitude, cfg_.epsilon));
    return n;
  }

  void horizon(Table& t) const {
    if (!cfg_.profile) invalid("profile", "the horizon command needs a [profile] section");
    const FlowProfile profile = build_profile(*cfg_.profile, base_dir_);
    const auto horizons = find_horizons(profile, units_);
    const auto report = validate_stationary_flow(profile);
    t.metadata.emplace_back("continuity_residual", format_double(report.residual) +
                                                       (report.advisory ? " (advisory)" : ""));
    t.metadata.emplace_back("near_horizon_density", "rho0 evaluated at each horizon radius");
    t.columns = {"r_H", "alpha", "temperature", "rho0", "event_horizon"};
    t.units = {"length", rate(), temp(), "density", "flag"};
    for (const auto& h : horizons) {
      t.rows.push_back({h.radius, h.alpha, h.temperature, profile.density_at(h.radius),
                        std::int64_t{h.event_horizon ? 1 : 0}});
    }
  }

  void spectrum(Table& t) const {
    const double a = alpha(t);
    const double temperature = hawking_temperature(a, units_);
    std::vector<double> omegas;
    if (cfg_.spectrum) {
      omegas = cfg_.spectrum->values();
    } else {
      omegas = GridSpec{1e-3 * a, 10.0 * a, 50, Spacing::log}.values();
      t.metadata.emplace_back("omega_grid", "default: 50 log-spaced points, omega/alpha in [1e-3, 10]");
    }
    t.columns = {"omega", "nbar", "temperature"};
    t.units = {rate(), "quanta", temp()};
    for (double w : omegas) t.rows.push_back({w, mean_occupation(w, a), temperature});
  }

  void squeeze(Table& t) const {
    const double a = alpha(t);
    const SqueezeSpec s = squeeze_parameter(omega(), a);
    const BogoliubovPair uv = bogoliubov_pair(s);
    t.columns = {"omega", "alpha", "r", "tanh_r", "u", "v", "nbar"};
    t.units = {rate(), rate(), "1", "1", "1", "1", "quanta"};
    t.rows.push_back({s.omega, s.alpha, s.r, s.tanh_r, uv.u, uv.v, mean_occupation(s.omega, a)});
  }

  void entangle(Table& t) const {
    const double a = alpha(t);
    const SqueezeSpec s = squeeze_parameter(omega(), a);
    const std::size_t n = cutoff_for(s.r, std::nullopt);
    const TwoModeState state = two_mode_squeezed_vacuum(s.r, n);
    const double tail = squeezed_vacuum_tail(s.r, n);
    const auto spectrum = schmidt_spectrum(state);
    const double c2 = s.cosh_r * s.cosh_r;
    const double s2 = s.sinh_r * s.sinh_r;
    const double closed = s2 > 0.0 ? c2 * std::log(c2) - s2 * std::log(s2) : 0.0;
    t.columns = {"r", "cutoff", "norm_deficit", "analytic_tail", "entropy", "entropy_closed_form"};
    t.units = {"1", "quanta", "1", "1", "nats", "nats"};
    std::vector<Cell> row{s.r, static_cast<std::int64_t>(n), state.norm_deficit(), tail,
                          entanglement_entropy(state, tail), closed};
    for (std::size_t i = 0; i < 5; ++i) {
      t.columns.push_back("schmidt_" + std::to_string(i));
      t.units.push_back("1");
      row.emplace_back(i < spectrum.size() ? spectrum[i] : 0.0);
    }
    t.rows.push_back(std::move(row));
  }

  void teleport(Table& t) const {
    const double a = alpha(t);
    const SqueezeSpec s = squeeze_parameter(omega(), a);
    const Complex z = target();
    const std::size_t n = cutoff_for(s.r, z);
    const FockVector phi = coherent_state({z, n, cfg_.epsilon}).state;
    const auto& tc = cfg_.teleport;

    std::optional<TeleportOutcome> out;
    if (tc.protocol == Protocol::mb) {
      out = mb_conditional(phi, s.r, tc.k, tc.sign, n, tc.weighting);
    } else {
      MeasurementSpec meas = MeasurementSpec::identity(n);
      if (tc.measurement == MeasurementChoice::random) {
        std::mt19937_64 rng(cfg_.seed);
        meas.target_unitary = random_unitary(n + 1, rng);
        meas.resource_unitary = random_unitary(n + 1, rng);
      }
      out = teleport_general(phi, s.r, meas, n);
    }
    t.columns = {"protocol", "k", "sign", "difference", "r", "cutoff", "probability", "fidelity",
                 "F_analytic_zero"};
    t.units = {"-", "quanta", "-", "quanta", "1", "quanta", "1", "1", "1"};
    t.rows.push_back({std::string(tc.protocol == Protocol::mb ? "mb" : "general"),
                      std::int64_t{out->k}, std::string(out->sign > 0 ? "+" : "-"),
                      std::int64_t{out->difference}, s.r, static_cast<std::int64_t>(n),
                      out->probability, out->fidelity, analytic_fidelity_zero(z, s.r)});
    t.extra = {{"output_state", to_json(out->output)}};
  }

  void sweep(Table& t) const {
    if (!cfg_.sweep) invalid("sweep", "the sweep command needs a [sweep] section");
    SweepRequest req;
    req.amplitude = target();
    req.omega = omega();
    req.axis = cfg_.sweep->over;
    req.grid = cfg_.sweep->grid.values();
    req.units = units_;
    req.cutoff = cfg_.cutoff;
    req.epsilon = cfg_.epsilon;
    t.metadata.emplace_back("omega", format_double(req.omega) + " " + rate());
    t.columns = {"alpha", "temperature", "r", "nbar", "F_analytic", "F_simulated", "P0"};
    t.units = {rate(), temp(), "1", "quanta", "1", "1", "1"};
    for (const auto& row : fidelity_temperature_sweep(req)) {
      t.rows.push_back({row.alpha, row.temperature, row.r, row.nbar, row.fidelity_analytic,
                        row.fidelity_simulated, row.probability_zero});
    }
  }

  const RunConfig& cfg_;
  UnitSystem units_;
  std::filesystem::path base_dir_;
};

}  // namespace detail

/// Runs one command. Relative profile files resolve against base_dir.
inline Table dispatch(const RunConfig& cfg, Command cmd,
                      const std::filesystem::path& base_dir = ".") {
  return detail::Runner(cfg, base_dir).run(cmd);
}

inline std::string render(const Table& t, OutputFormat format) {
  return format == OutputFormat::csv ? to_csv(t) : to_json_text(t);
}

/// Single-line machine-readable error record.
inline std::string error_record(std::string_view kind, std::string_view message, int exit_code) {
  nlohmann::ordered_json j = {{"error", kind}, {"message", message}, {"exit", exit_code}};
  return j.dump();
}

inline int exit_code_for(const Error& e) { return is_config_error(e.kind()) ? 2 : 1; }

}  // namespace sonic
