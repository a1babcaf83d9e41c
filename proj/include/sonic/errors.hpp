#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sonic {

enum class ErrorKind {
  // acoustic geometry
  ZeroAmplitude,
  GridTooSmall,
  InvalidProfile,
  OutOfDomain,
  AtHorizon,
  NoHorizon,
  NonTransonic,
  // squeeze map / units
  NonPositiveAlpha,
  NonPositiveFrequency,
  NonPositiveTemperature,
  InvalidUnits,
  // fock space
  NegativeSqueeze,
  CutoffTooSmall,
  CutoffTooLarge,
  NotNormalized,
  NegativeEigenvalue,
  // teleport
  NonUnitaryMeasurement,
  ShiftOutOfRange,
  ZeroProbability,
  // internal identity checks
  ConsistencyError,
  // configuration / IO
  ParseError,
  ValidationError,
  IoError,
};

constexpr std::string_view error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ZeroAmplitude: return "ZeroAmplitude";
    case ErrorKind::GridTooSmall: return "GridTooSmall";
    case ErrorKind::InvalidProfile: return "InvalidProfile";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::AtHorizon: return "AtHorizon";
    case ErrorKind::NoHorizon: return "NoHorizon";
    case ErrorKind::NonTransonic: return "NonTransonic";
    case ErrorKind::NonPositiveAlpha: return "NonPositiveAlpha";
    case ErrorKind::NonPositiveFrequency: return "NonPositiveFrequency";
    case ErrorKind::NonPositiveTemperature: return "NonPositiveTemperature";
    case ErrorKind::InvalidUnits: return "InvalidUnits";
    case ErrorKind::NegativeSqueeze: return "NegativeSqueeze";
    case ErrorKind::CutoffTooSmall: return "CutoffTooSmall";
    case ErrorKind::CutoffTooLarge: return "CutoffTooLarge";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::NegativeEigenvalue: return "NegativeEigenvalue";
    case ErrorKind::NonUnitaryMeasurement: return "NonUnitaryMeasurement";
    case ErrorKind::ShiftOutOfRange: return "ShiftOutOfRange";
    case ErrorKind::ZeroProbability: return "ZeroProbability";
    case ErrorKind::ConsistencyError: return "ConsistencyError";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

/// Configuration problems map to CLI exit status 2, everything else to 1.
constexpr bool is_config_error(ErrorKind kind) noexcept {
  return kind == ErrorKind::ParseError || kind == ErrorKind::ValidationError ||
         kind == ErrorKind::IoError;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

namespace detail {

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace detail
}  // namespace sonic
