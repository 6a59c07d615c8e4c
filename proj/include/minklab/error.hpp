#pragma once

#include <stdexcept>
#include <string>

namespace minklab {

enum class ErrorCode {
  OriginNotInterior,
  DegenerateHull,
  NonpositiveScale,
  MixedKinds,
  DimensionMismatch,
  UnsupportedDimension,
  NonIntervalBody,
  StencilTooLarge,
  GridMismatch,
  EmptySeed,
  EpsilonBelowFloor,
  TooFewPoints,
  OutOfWindow,
  WindowTooSmall,
  InvalidArgument,
  ParseError,
  ValidationError,
  ResourceCap,
};

const char* to_string(ErrorCode code);

// All library failures are reported through this type; code() identifies the
// contract that was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace minklab
