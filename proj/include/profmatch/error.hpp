#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace profmatch {

enum class ErrorCode {
  invalid_instance,
  unknown_edge,
  length_mismatch,
  not_perfect,
  not_improving,
  r_too_small,
  rank_out_of_bounds,
  missing_distance,
  negative_weight,
  condition_violated,
  not_reducible,
  too_large,
  parse_error,
  validation_error,
  config_error,
  mixed_instances,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_instance: return "InvalidInstance";
    case ErrorCode::unknown_edge: return "UnknownEdge";
    case ErrorCode::length_mismatch: return "LengthMismatch";
    case ErrorCode::not_perfect: return "NotPerfect";
    case ErrorCode::not_improving: return "NotImproving";
    case ErrorCode::r_too_small: return "RTooSmall";
    case ErrorCode::rank_out_of_bounds: return "RankOutOfBounds";
    case ErrorCode::missing_distance: return "MissingDistance";
    case ErrorCode::negative_weight: return "NegativeWeight";
    case ErrorCode::condition_violated: return "ConditionViolated";
    case ErrorCode::not_reducible: return "NotReducible";
    case ErrorCode::too_large: return "TooLarge";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::validation_error: return "ValidationError";
    case ErrorCode::config_error: return "ConfigError";
    case ErrorCode::mixed_instances: return "MixedInstances";
  }
  return "Unknown";
}

/// Every domain failure in the library is reported as an Error carrying a
/// machine-readable code; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace profmatch
