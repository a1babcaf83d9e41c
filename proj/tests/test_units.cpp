#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "expected_values.hpp"
#include "sonic/units.hpp"

namespace sonic::test {
namespace {

TEST(Units, NaturalTemperatureIsAlphaOverTwoPi) {
  EXPECT_NEAR(hawking_temperature(1.0), expected::kInvTwoPi, 1e-15);
  EXPECT_NEAR(hawking_temperature(0.5), expected::kTemperatureLinearHorizon, 1e-15);
  for (double a : {1e-3, 0.1, 1.0, 7.5, 1e3}) {
    EXPECT_NEAR(hawking_temperature(a), a / (2.0 * std::numbers::pi), 1e-15 * std::max(1.0, a));
  }
}

TEST(Units, SiRoundTripAtNanokelvin) {
  const auto si = UnitSystem::si();
  const double alpha = alpha_for_temperature(200e-9, si);
  EXPECT_NEAR(alpha, expected::kAlphaFor200nK, 1e-9 * alpha);
  EXPECT_NEAR(hawking_temperature(alpha, si), 200e-9, 1e-22);
  EXPECT_EQ(si.temperature_unit(), "K");
  EXPECT_EQ(si.rate_unit(), "1/s");
}

TEST(Units, InverseIsExactAcrossScales) {
  for (double t = 1e-12; t < 1e6; t *= 13.0) {
    EXPECT_NEAR(hawking_temperature(alpha_for_temperature(t)), t, 4e-16 * t);
  }
}

TEST(Units, RejectsNonPositiveInputs) {
  auto kind_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::ConsistencyError;
  };
  EXPECT_EQ(kind_of([] { hawking_temperature(0.0); }), ErrorKind::NonPositiveAlpha);
  EXPECT_EQ(kind_of([] { hawking_temperature(-1.0); }), ErrorKind::NonPositiveAlpha);
  EXPECT_EQ(kind_of([] { hawking_temperature(NAN); }), ErrorKind::NonPositiveAlpha);
  EXPECT_EQ(kind_of([] { alpha_for_temperature(0.0); }), ErrorKind::NonPositiveTemperature);
  UnitSystem broken;
  broken.hbar = 0.0;
  EXPECT_EQ(kind_of([&] { hawking_temperature(1.0, broken); }), ErrorKind::InvalidUnits);
}

}  // namespace
}  // namespace sonic::test
