#pragma once

// Frozen reference values. Every number below was produced by
// tests/oracles/derive_expected.py (mpmath, 50 digits, direct series or
// closed forms) and is independent of the library code under test.

namespace sonic::expected {

inline constexpr double kOmegaOverAlphaTanhHalf = 0.22063560015265159;
inline constexpr double kSqueezeTanhHalf = 0.54930614433405485;
inline constexpr double kTanhAtRatioHalf = 0.20787957635076191;
inline constexpr double kSqueezeAtRatioHalf = 0.21095412737801211;
inline constexpr double kNbarAtRatioHalf = 0.045165705363684115;
inline constexpr double kCoshTanhHalf = 1.1547005383792515;
inline constexpr double kSinhTanhHalf = 0.57735026918962576;
inline constexpr double kInvTwoPi = 0.15915494309189534;
inline constexpr double kAlphaFor200nK = 1.6451935034353737e+5;
inline constexpr double kTemperatureLinearHorizon = 0.079577471545947668;
inline constexpr double kCoherentOneC0 = 0.60653065971263342;
inline constexpr double kCoherentOneC1 = 0.60653065971263342;
inline constexpr double kCoherentOneC2 = 0.4288819424803534;
inline constexpr double kCoherentOneTailN20 = 7.5426250772052785e-21;
inline constexpr double kSqueezedC00 = 0.86602540378443865;
inline constexpr double kSqueezedC11 = 0.43301270189221932;
inline constexpr double kSqueezedC22 = 0.21650635094610966;
inline constexpr double kSqueezedDeficitN20 = 2.2737367544323206e-13;
inline constexpr double kThermalP0 = 0.75;
inline constexpr double kThermalP1 = 0.1875;
inline constexpr double kThermalP2 = 0.046875;
inline constexpr double kEntropyTanhHalf = 0.7497801928250778;
inline constexpr double kOverlapCoherentOneHalf = 0.77880078307140487;
inline constexpr double kProbZeroCoherentOne = 0.35427491455576103;
inline constexpr double kFidelityTanhPoint9 = 0.99004983374916805;
inline constexpr double kFidelityTanhPoint2 = 0.52729242404304856;
inline constexpr double kLinearGtt = 0.0975;
inline constexpr double kLinearContinuityResidual = 0.56;

}  // namespace sonic::expected
