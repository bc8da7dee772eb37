#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyparr {

enum class ErrorKind {
  ParseError,
  IoError,
  ZeroForm,
  DuplicateHyperplane,
  NotEssential,
  DimensionMismatch,
  OnHyperplane,
  UnknownFlat,
  Infeasible,
  TooLarge,
  NotLocallyConsistent,
  GloballyConsistent,
  WeightConditionViolated,
  GenericityFailed,
  WitnessNotFound,
  RealizationInvalid,
  InvalidArgument,
  InternalError,
};

inline std::string_view kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::ZeroForm: return "ZeroForm";
    case ErrorKind::DuplicateHyperplane: return "DuplicateHyperplane";
    case ErrorKind::NotEssential: return "NotEssential";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::OnHyperplane: return "OnHyperplane";
    case ErrorKind::UnknownFlat: return "UnknownFlat";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NotLocallyConsistent: return "NotLocallyConsistent";
    case ErrorKind::GloballyConsistent: return "GloballyConsistent";
    case ErrorKind::WeightConditionViolated: return "WeightConditionViolated";
    case ErrorKind::GenericityFailed: return "GenericityFailed";
    case ErrorKind::WitnessNotFound: return "WitnessNotFound";
    case ErrorKind::RealizationInvalid: return "RealizationInvalid";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InternalError: return "InternalError";
  }
  return "Unknown";
}

/// Domain error carrying a machine-readable kind. Every failure the library
/// reports to callers goes through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return kind_name(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace hyparr
