#include <random>
#include <string>

#include <gtest/gtest.h>

#include "sonic/config.hpp"

namespace sonic::test {
namespace {

Error config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "accepted:\n" << text;
  return Error(ErrorKind::ConsistencyError, "no error");
}

TEST(Config, MinimalAppliesDefaults) {
  const auto c = parse_config("alpha = 0.5\nomega = 0.110318\ntarget = 1.0\n");
  EXPECT_EQ(*c.alpha, 0.5);
  EXPECT_EQ(*c.omega, 0.110318);
  EXPECT_EQ(*c.target, Complex(1.0, 0.0));
  EXPECT_FALSE(c.cutoff.has_value());
  EXPECT_EQ(c.epsilon, 1e-12);
  EXPECT_FALSE(c.si_units);
  EXPECT_EQ(c.units(), UnitSystem::natural());
  const std::string echo = emit_config(c);
  EXPECT_NE(echo.find("cutoff = auto"), std::string::npos);
  EXPECT_NE(echo.find("units = natural"), std::string::npos);
}

TEST(Config, UnknownKeyIsParseErrorNamingIt) {
  const auto e = config_error("alpah = 0.5\n");
  EXPECT_EQ(e.kind(), ErrorKind::ParseError);
  EXPECT_NE(std::string(e.what()).find("alpah"), std::string::npos);
  EXPECT_NE(std::string(e.what()).find("line 1"), std::string::npos);
}

TEST(Config, ProfileAndAlphaAreExclusive) {
  const auto e = config_error(
      "alpha = 0.5\n[profile]\nkind = tabulated\nsound_speed = 1\nfile = flow.dat\n");
  EXPECT_EQ(e.kind(), ErrorKind::ValidationError);
  EXPECT_NE(std::string(e.what()).find("profile"), std::string::npos);
  EXPECT_EQ(config_error("alpha = 1\ntemperature = 1\n").kind(), ErrorKind::ValidationError);
}

TEST(Config, SyntaxErrorsCarryLineNumbers) {
  struct Case {
    const char* text;
    const char* needle;
  };
  for (const auto& c : {Case{"alpha = 0.5\n\nomega 1\n", "line 3"},
                        Case{"alpha = 0.5\n[bogus]\n", "line 2"},
                        Case{"alpha = 0.5\nalpha = 0.6\n", "line 2"},
                        Case{"alpha = abc\n", "line 1"},
                        Case{"alpha = 1\n[teleport]\nsign = x\n", "line 3"},
                        Case{"alpha = 1\ntarget = 1, 2, 3\n", "line 2"},
                        Case{"alpha = 1\n[profile\n", "line 2"}}) {
    const auto e = config_error(c.text);
    EXPECT_EQ(e.kind(), ErrorKind::ParseError) << c.text;
    EXPECT_NE(std::string(e.what()).find(c.needle), std::string::npos) << e.what();
  }
}

TEST(Config, ValidationErrorsNameTheField) {
  struct Case {
    const char* text;
    const char* field;
  };
  for (const auto& c : {Case{"alpha = -1\n", "alpha"},
                        Case{"omega = 1\n", "alpha"},
                        Case{"alpha = 1\ncutoff = 0\n", "cutoff"},
                        Case{"alpha = 1\nepsilon = 2\n", "epsilon"},
                        Case{"[profile]\nkind = linear\nsound_speed = 1\nradius = 2\n", "profile.surface_gravity"},
                        Case{"[profile]\nkind = tabulated\nsound_speed = 1\nfile = a\nradius = 2\n", "profile.radius"},
                        Case{"[sweep]\nmin = 2\nmax = 1\npoints = 3\n", "sweep.max"},
                        Case{"alpha = 1\n[teleport]\nmeasurement = random\n", "teleport.measurement"}}) {
    const auto e = config_error(c.text);
    EXPECT_EQ(e.kind(), ErrorKind::ValidationError) << c.text;
    EXPECT_NE(std::string(e.what()).find(c.field), std::string::npos) << e.what();
  }
}

TEST(Config, SweepAloneNeedsNoSource) {
  const auto c = parse_config("omega = 1\ntarget = 1\n[sweep]\nmin = 0.1\nmax = 1\npoints = 4\nspacing = log\n");
  ASSERT_TRUE(c.sweep.has_value());
  const auto v = c.sweep->grid.values();
  ASSERT_EQ(v.size(), 4u);
  EXPECT_DOUBLE_EQ(v[0], 0.1);
  EXPECT_DOUBLE_EQ(v[3], 1.0);
  EXPECT_NEAR(v[1], std::pow(10.0, -2.0 / 3.0), 1e-15);
}

TEST(Config, CommentsAndWhitespace) {
  const auto c = parse_config("  # header\n\talpha=0.25   # trailing\n\n[teleport]  \n sign = - \n k = 2\n");
  EXPECT_EQ(*c.alpha, 0.25);
  EXPECT_EQ(c.teleport.sign, -1);
  EXPECT_EQ(c.teleport.k, 2);
}

// =============================================================================
// Round trip (property)
// =============================================================================

RunConfig random_config(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto positive = [&] { return std::exp(20.0 * u(rng) - 10.0); };
  auto coin = [&] { return rng() % 2 == 0; };
  RunConfig c;
  c.si_units = coin();
  switch (rng() % 4) {
    case 0: c.alpha = positive(); break;
    case 1: c.temperature = positive(); break;
    case 2: {
      ProfileConfig p;
      p.kind = static_cast<ProfileKind>(rng() % 3);
      p.sound_speed = positive();
      if (p.kind == ProfileKind::tabulated) {
        p.file = "profile_" + std::to_string(rng() % 100) + ".dat";
      } else {
        p.radius = positive();
        p.density = positive();
        p.points = 5 + rng() % 5000;
        if (p.kind == ProfileKind::linear) p.surface_gravity = positive();
        if (p.kind == ProfileKind::power_law) p.exponent = positive();
        if (coin()) {
          const double a = positive();
          p.domain = std::make_pair(a, a * (1.0 + positive()));
        }
      }
      c.profile = p;
      break;
    }
    default: break;  // sweep below supplies the source
  }
  if (coin()) c.omega = positive();
  if (coin()) c.target = Complex(u(rng) * 4 - 2, coin() ? u(rng) - 0.5 : 0.0);
  if (coin()) c.cutoff = 1 + rng() % kMaxCutoff;
  c.epsilon = std::exp(-30.0 * u(rng) - 1e-3);
  c.output = coin() ? OutputFormat::csv : OutputFormat::json;
  c.seed = rng();
  auto grid = [&] {
    GridSpec g;
    g.min = positive();
    g.points = 1 + rng() % 200;
    g.max = g.points == 1 ? g.min : g.min * (1.0 + positive());
    g.spacing = coin() ? Spacing::log : Spacing::linear;
    return g;
  };
  if (!c.alpha && !c.temperature && !c.profile) {
    c.sweep = SweepConfig{coin() ? SweepAxis::alpha : SweepAxis::temperature, grid()};
  }
  if (coin()) c.spectrum = grid();
  if (coin()) {
    c.teleport.protocol = Protocol::general;
    c.teleport.measurement = coin() ? MeasurementChoice::random : MeasurementChoice::identity;
  } else {
    c.teleport.k = static_cast<int>(rng() % 50);
    c.teleport.sign = coin() ? +1 : -1;
    c.teleport.weighting = coin() ? ShiftWeighting::receiver_index : ShiftWeighting::target_index;
  }
  return c;
}

TEST(Config, EmitThenParseIsIdentity) {
  std::mt19937_64 rng(424242);
  for (int trial = 0; trial < 500; ++trial) {
    const RunConfig c = random_config(rng);
    const std::string text = emit_config(c);
    RunConfig back;
    ASSERT_NO_THROW(back = parse_config(text)) << text;
    EXPECT_TRUE(back == c) << text;
    EXPECT_EQ(emit_config(back), text);
  }
}

}  // namespace
}  // namespace sonic::test
