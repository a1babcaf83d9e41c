#pragma once

// Run configuration: a line-oriented `key = value` format with optional
// [profile], [sweep], [spectrum] and [teleport] sections. '#' starts a
// comment. Unknown keys and sections are errors.
//
//   units = natural            # natural | SI
//   alpha = 0.5                # or: temperature = ..., or a [profile] section
//   omega = 0.110318
//   target = 1.0, 0.0          # coherent amplitude re[, im]
//   cutoff = auto              # or an integer N
//   epsilon = 1e-12
//   output = csv               # csv | json
//   seed = 7
//
//   [profile]
//   kind = linear              # linear | powerlaw | tabulated
//   sound_speed = 1
//   radius = 2
//   surface_gravity = 0.5      # linear only
//   exponent = 2               # powerlaw only
//   density = 1                # analytic kinds
//   domain = 1.5, 2.5          # analytic kinds
//   points = 2001              # analytic kinds
//   file = flow.dat            # tabulated only; relative to the config file
//
//   [sweep]
//   over = alpha               # alpha | temperature
//   min = 0.1
//   max = 10
//   points = 20
//   spacing = log              # linear | log
//
//   [spectrum]                 # omega grid for the `spectrum` command
//   min = 0.001
//   max = 1
//   points = 50
//   spacing = log
//
//   [teleport]
//   protocol = mb              # mb | general
//   k = 0
//   sign = +
//   measurement = identity     # identity | random (general protocol)
//   weighting = receiver       # receiver | target (mb protocol)

#include <charconv>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sonic/errors.hpp"
#include "sonic/flow_profile.hpp"
#include "sonic/fock_space.hpp"
#include "sonic/sweep.hpp"
#include "sonic/teleport.hpp"
#include "sonic/units.hpp"

namespace sonic {

enum class OutputFormat { csv, json };
enum class Spacing { linear, log };
enum class Protocol { mb, general };
enum class MeasurementChoice { identity, random };

struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  std::size_t points = 0;
  Spacing spacing = Spacing::linear;

  std::vector<double> values() const {
    std::vector<double> v(points);
    for (std::size_t i = 0; i < points; ++i) {
      const double f = points > 1 ? static_cast<double>(i) / static_cast<double>(points - 1) : 0.0;
      v[i] = spacing == Spacing::log ? min * std::pow(max / min, f) : min + (max - min) * f;
    }
    if (points > 1) v.back() = max;
    return v;
  }
  bool operator==(const GridSpec&) const = default;
};

struct ProfileConfig {
  ProfileKind kind = ProfileKind::linear;
  double sound_speed = 0.0;
  double radius = 0.0;
  double surface_gravity = 0.0;
  double exponent = 2.0;
  double density = 1.0;
  std::optional<std::pair<double, double>> domain;
  std::size_t points = 2001;
  std::string file;
  bool operator==(const ProfileConfig&) const = default;
};

struct SweepConfig {
  SweepAxis over = SweepAxis::alpha;
  GridSpec grid;
  bool operator==(const SweepConfig&) const = default;
};

struct TeleportConfig {
  Protocol protocol = Protocol::mb;
  int k = 0;
  int sign = +1;
  MeasurementChoice measurement = MeasurementChoice::identity;
  ShiftWeighting weighting = ShiftWeighting::receiver_index;
  bool operator==(const TeleportConfig&) const = default;
};

struct RunConfig {
  bool si_units = false;
  std::optional<ProfileConfig> profile;
  std::optional<double> alpha;
  std::optional<double> temperature;
  std::optional<double> omega;
  std::optional<Complex> target;
  std::optional<std::size_t> cutoff;  // empty: auto
  double epsilon = 1e-12;
  OutputFormat output = OutputFormat::csv;
  std::uint64_t seed = 0;
  std::optional<SweepConfig> sweep;
  std::optional<GridSpec> spectrum;
  TeleportConfig teleport;

  UnitSystem units() const { return si_units ? UnitSystem::si() : UnitSystem::natural(); }
  bool operator==(const RunConfig&) const = default;
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct Entry {
  std::string value;
  std::size_t line = 0;
};

class ConfigReader {
 public:
  ConfigReader(std::string section, std::map<std::string, Entry> entries)
      : section_(std::move(section)), entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  std::string field(const std::string& key) const {
    return section_.empty() ? key : section_ + "." + key;
  }

  [[noreturn]] void parse_error(const std::string& key, const std::string& what) const {
    const auto& e = entries_.at(key);
    fail(ErrorKind::ParseError,
         "line " + std::to_string(e.line) + ": " + field(key) + ": " + what);
  }

  std::string text(const std::string& key) const { return entries_.at(key).value; }

  double number(const std::string& key) const {
    const std::string s = text(key);
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
      parse_error(key, "expected a number, got '" + s + "'");
    }
    return v;
  }

  std::uint64_t integer(const std::string& key) const {
    const std::string s = text(key);
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
      parse_error(key, "expected a non-negative integer, got '" + s + "'");
    }
    return v;
  }

  std::vector<double> numbers(const std::string& key, std::size_t min_count,
                              std::size_t max_count) const {
    std::vector<double> out;
    std::stringstream ss(text(key));
    std::string item;
    while (std::getline(ss, item, ',')) {
      const std::string t = trim(item);
      double v = 0.0;
      const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
      if (t.empty() || res.ec != std::errc{} || res.ptr != t.data() + t.size() ||
          !std::isfinite(v)) {
        parse_error(key, "expected comma-separated numbers, got '" + text(key) + "'");
      }
      out.push_back(v);
    }
    if (out.size() < min_count || out.size() > max_count) {
      parse_error(key, "expected " + std::to_string(min_count) +
                           (min_count == max_count ? "" : "-" + std::to_string(max_count)) +
                           " values");
    }
    return out;
  }

  template <class T>
  T choice(const std::string& key, const std::vector<std::pair<std::string, T>>& options) const {
    const std::string s = text(key);
    std::string allowed;
    for (const auto& [name, value] : options) {
      if (s == name) return value;
      allowed += (allowed.empty() ? "" : " | ") + name;
    }
    parse_error(key, "expected " + allowed + ", got '" + s + "'");
  }

 private:
  std::string section_;
  std::map<std::string, Entry> entries_;
};

[[noreturn]] inline void invalid(const std::string& field, const std::string& what) {
  fail(ErrorKind::ValidationError, field + ": " + what);
}

inline void require_positive(const std::string& field, double v) {
  if (!(v > 0.0)) invalid(field, "must be > 0");
}

inline GridSpec read_grid(const ConfigReader& in) {
  for (const char* key : {"min", "max", "points"}) {
    if (!in.has(key)) invalid(in.field(key), "is required");
  }
  GridSpec g;
  g.min = in.number("min");
  g.max = in.number("max");
  g.points = static_cast<std::size_t>(in.integer("points"));
  if (in.has("spacing")) {
    g.spacing = in.choice<Spacing>("spacing", {{"linear", Spacing::linear}, {"log", Spacing::log}});
  }
  require_positive(in.field("min"), g.min);
  require_positive(in.field("max"), g.max);
  if (g.points < 1) invalid(in.field("points"), "must be >= 1");
  if (g.points == 1 && g.max != g.min) invalid(in.field("points"), "a single point needs min = max");
  if (g.points > 1 && !(g.max > g.min)) invalid(in.field("max"), "must exceed min");
  return g;
}

inline ProfileConfig read_profile(const ConfigReader& in) {
  if (!in.has("kind")) invalid(in.field("kind"), "is required");
  ProfileConfig p;
  p.kind = in.choice<ProfileKind>("kind", {{"linear", ProfileKind::linear},
                                           {"powerlaw", ProfileKind::power_law},
                                           {"tabulated", ProfileKind::tabulated}});
  if (!in.has("sound_speed")) invalid(in.field("sound_speed"), "is required");
  p.sound_speed = in.number("sound_speed");
  require_positive(in.field("sound_speed"), p.sound_speed);

  const bool analytic = p.kind != ProfileKind::tabulated;
  auto forbid = [&](const char* key, bool allowed) {
    if (!allowed && in.has(key)) invalid(in.field(key), "not used by this profile kind");
  };
  forbid("radius", analytic);
  forbid("density", analytic);
  forbid("domain", analytic);
  forbid("points", analytic);
  forbid("surface_gravity", p.kind == ProfileKind::linear);
  forbid("exponent", p.kind == ProfileKind::power_law);
  forbid("file", !analytic);

  if (analytic) {
    if (!in.has("radius")) invalid(in.field("radius"), "is required");
    p.radius = in.number("radius");
    require_positive(in.field("radius"), p.radius);
    if (in.has("density")) p.density = in.number("density");
    require_positive(in.field("density"), p.density);
    if (in.has("domain")) {
      const auto d = in.numbers("domain", 2, 2);
      if (!(d[0] > 0.0) || !(d[1] > d[0])) invalid(in.field("domain"), "needs 0 < r_min < r_max");
      p.domain = std::make_pair(d[0], d[1]);
    }
    if (in.has("points")) p.points = static_cast<std::size_t>(in.integer("points"));
    if (p.points < 5) invalid(in.field("points"), "must be >= 5");
  }
  if (p.kind == ProfileKind::linear) {
    if (!in.has("surface_gravity")) invalid(in.field("surface_gravity"), "is required");
    p.surface_gravity = in.number("surface_gravity");
    require_positive(in.field("surface_gravity"), p.surface_gravity);
  }
  if (p.kind == ProfileKind::power_law) {
    if (in.has("exponent")) p.exponent = in.number("exponent");
    require_positive(in.field("exponent"), p.exponent);
  }
  if (p.kind == ProfileKind::tabulated) {
    if (!in.has("file")) invalid(in.field("file"), "is required");
    p.file = in.text("file");
    if (p.file.empty()) invalid(in.field("file"), "must not be empty");
  }
  return p;
}

inline TeleportConfig read_teleport(const ConfigReader& in) {
  TeleportConfig t;
  if (in.has("protocol")) {
    t.protocol = in.choice<Protocol>("protocol", {{"mb", Protocol::mb}, {"general", Protocol::general}});
  }
  if (in.has("k")) {
    const auto k = in.integer("k");
    if (k > static_cast<std::uint64_t>(kMaxCutoff)) invalid(in.field("k"), "too large");
    t.k = static_cast<int>(k);
  }
  if (in.has("sign")) t.sign = in.choice<int>("sign", {{"+", +1}, {"-", -1}});
  if (in.has("measurement")) {
    t.measurement = in.choice<MeasurementChoice>(
        "measurement", {{"identity", MeasurementChoice::identity}, {"random", MeasurementChoice::random}});
  }
  if (in.has("weighting")) {
    t.weighting = in.choice<ShiftWeighting>(
        "weighting", {{"receiver", ShiftWeighting::receiver_index}, {"target", ShiftWeighting::target_index}});
  }
  if (t.protocol == Protocol::mb && t.measurement != MeasurementChoice::identity) {
    invalid(in.field("measurement"), "only applies to protocol = general");
  }
  if (t.protocol == Protocol::general &&
      (t.k != 0 || t.sign != +1 || t.weighting != ShiftWeighting::receiver_index)) {
    invalid(in.field("protocol"), "k, sign and weighting only apply to protocol = mb");
  }
  return t;
}

}  // namespace detail

/// Parses and validates a configuration. Syntax problems raise ParseError
/// with the line number; semantic ones raise ValidationError naming the
/// field.
inline RunConfig parse_config(std::string_view text) {
  static const std::map<std::string, std::set<std::string>> kKeys = {
      {"", {"units", "alpha", "temperature", "omega", "target", "cutoff", "epsilon", "output", "seed"}},
      {"profile",
       {"kind", "sound_speed", "radius", "surface_gravity", "exponent", "density", "domain", "points", "file"}},
      {"sweep", {"over", "min", "max", "points", "spacing"}},
      {"spectrum", {"min", "max", "points", "spacing"}},
      {"teleport", {"protocol", "k", "sign", "measurement", "weighting"}},
  };

  std::map<std::string, std::map<std::string, detail::Entry>> sections;
  sections[""];
  std::string current;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  auto parse_fail = [&](const std::string& what) {
    detail::fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = detail::trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') parse_fail("malformed section header '" + line + "'");
      current = detail::trim(line.substr(1, line.size() - 2));
      if (current.empty() || !kKeys.count(current)) parse_fail("unknown section [" + current + "]");
      if (sections.count(current)) parse_fail("duplicate section [" + current + "]");
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) parse_fail("expected 'key = value', got '" + line + "'");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    const std::string where = current.empty() ? key : current + "." + key;
    if (key.empty()) parse_fail("missing key");
    if (!kKeys.at(current).count(key)) parse_fail("unknown key '" + where + "'");
    if (value.empty()) parse_fail("empty value for '" + where + "'");
    auto& sec = sections[current];
    if (sec.count(key)) parse_fail("duplicate key '" + where + "'");
    sec[key] = {value, line_no};
  }

  const detail::ConfigReader top("", sections[""]);
  RunConfig cfg;
  if (top.has("units")) cfg.si_units = top.choice<bool>("units", {{"natural", false}, {"SI", true}});
  if (top.has("alpha")) {
    cfg.alpha = top.number("alpha");
    detail::require_positive("alpha", *cfg.alpha);
  }
  if (top.has("temperature")) {
    cfg.temperature = top.number("temperature");
    detail::require_positive("temperature", *cfg.temperature);
  }
  if (top.has("omega")) {
    cfg.omega = top.number("omega");
    detail::require_positive("omega", *cfg.omega);
  }
  if (top.has("target")) {
    const auto z = top.numbers("target", 1, 2);
    cfg.target = Complex(z[0], z.size() > 1 ? z[1] : 0.0);
  }
  if (top.has("cutoff") && top.text("cutoff") != "auto") {
    const auto n = top.integer("cutoff");
    if (n < 1 || n > kMaxCutoff) detail::invalid("cutoff", "must be auto or 1.." + std::to_string(kMaxCutoff));
    cfg.cutoff = static_cast<std::size_t>(n);
  }
  if (top.has("epsilon")) {
    cfg.epsilon = top.number("epsilon");
    if (!(cfg.epsilon > 0.0) || !(cfg.epsilon < 1.0)) detail::invalid("epsilon", "must lie in (0, 1)");
  }
  if (top.has("output")) {
    cfg.output = top.choice<OutputFormat>("output", {{"csv", OutputFormat::csv}, {"json", OutputFormat::json}});
  }
  if (top.has("seed")) cfg.seed = top.integer("seed");

  if (sections.count("profile")) {
    cfg.profile = detail::read_profile(detail::ConfigReader("profile", sections["profile"]));
  }
  if (sections.count("sweep")) {
    const detail::ConfigReader in("sweep", sections["sweep"]);
    SweepConfig s;
    if (in.has("over")) {
      s.over = in.choice<SweepAxis>("over", {{"alpha", SweepAxis::alpha}, {"temperature", SweepAxis::temperature}});
    }
    s.grid = detail::read_grid(in);
    cfg.sweep = s;
  }
  if (sections.count("spectrum")) {
    cfg.spectrum = detail::read_grid(detail::ConfigReader("spectrum", sections["spectrum"]));
  }
  if (sections.count("teleport")) {
    cfg.teleport = detail::read_teleport(detail::ConfigReader("teleport", sections["teleport"]));
  }

  const int sources = int(cfg.profile.has_value()) + int(cfg.alpha.has_value()) +
                      int(cfg.temperature.has_value());
  if (sources > 1) {
    detail::invalid(cfg.profile ? "profile" : "alpha",
                    "profile, alpha and temperature are mutually exclusive");
  }
  if (sources == 0 && !cfg.sweep) {
    detail::invalid("alpha", "one of alpha, temperature or [profile] is required");
  }
  return cfg;
}

/// Canonical echo: every field, defaults included, with doubles at 17
/// significant digits so parse_config(emit_config(c)) == c.
inline std::string emit_config(const RunConfig& c) {
  using detail::format_double;
  std::ostringstream out;
  out << "units = " << (c.si_units ? "SI" : "natural") << "\n";
  if (c.alpha) out << "alpha = " << format_double(*c.alpha) << "\n";
  if (c.temperature) out << "temperature = " << format_double(*c.temperature) << "\n";
  if (c.omega) out << "omega = " << format_double(*c.omega) << "\n";
  if (c.target) {
    out << "target = " << format_double(c.target->real()) << ", " << format_double(c.target->imag()) << "\n";
  }
  out << "cutoff = " << (c.cutoff ? std::to_string(*c.cutoff) : std::string("auto")) << "\n";
  out << "epsilon = " << format_double(c.epsilon) << "\n";
  out << "output = " << (c.output == OutputFormat::csv ? "csv" : "json") << "\n";
  out << "seed = " << c.seed << "\n";

  auto grid = [&](const GridSpec& g) {
    out << "min = " << format_double(g.min) << "\n"
        << "max = " << format_double(g.max) << "\n"
        << "points = " << g.points << "\n"
        << "spacing = " << (g.spacing == Spacing::log ? "log" : "linear") << "\n";
  };

  if (c.profile) {
    const auto& p = *c.profile;
    out << "\n[profile]\n";
    out << "kind = "
        << (p.kind == ProfileKind::linear ? "linear" : p.kind == ProfileKind::power_law ? "powerlaw" : "tabulated")
        << "\n";
    out << "sound_speed = " << format_double(p.sound_speed) << "\n";
    if (p.kind != ProfileKind::tabulated) {
      out << "radius = " << format_double(p.radius) << "\n";
      if (p.kind == ProfileKind::linear) out << "surface_gravity = " << format_double(p.surface_gravity) << "\n";
      if (p.kind == ProfileKind::power_law) out << "exponent = " << format_double(p.exponent) << "\n";
      out << "density = " << format_double(p.density) << "\n";
      if (p.domain) {
        out << "domain = " << format_double(p.domain->first) << ", " << format_double(p.domain->second) << "\n";
      }
      out << "points = " << p.points << "\n";
    } else {
      out << "file = " << p.file << "\n";
    }
  }
  if (c.sweep) {
    out << "\n[sweep]\n";
    out << "over = " << (c.sweep->over == SweepAxis::alpha ? "alpha" : "temperature") << "\n";
    grid(c.sweep->grid);
  }
  if (c.spectrum) {
    out << "\n[spectrum]\n";
    grid(*c.spectrum);
  }
  const auto& t = c.teleport;
  out << "\n[teleport]\n";
  out << "protocol = " << (t.protocol == Protocol::mb ? "mb" : "general") << "\n";
  if (t.protocol == Protocol::mb) {
    out << "k = " << t.k << "\n";
    out << "sign = " << (t.sign > 0 ? "+" : "-") << "\n";
    out << "weighting = " << (t.weighting == ShiftWeighting::receiver_index ? "receiver" : "target") << "\n";
  } else {
    out << "measurement = " << (t.measurement == MeasurementChoice::identity ? "identity" : "random") << "\n";
  }
  return out.str();
}

}  // namespace sonic
