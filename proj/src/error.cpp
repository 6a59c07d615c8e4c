#include "minklab/error.hpp"

namespace minklab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OriginNotInterior: return "OriginNotInterior";
    case ErrorCode::DegenerateHull: return "DegenerateHull";
    case ErrorCode::NonpositiveScale: return "NonpositiveScale";
    case ErrorCode::MixedKinds: return "MixedKinds";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::NonIntervalBody: return "NonIntervalBody";
    case ErrorCode::StencilTooLarge: return "StencilTooLarge";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::EmptySeed: return "EmptySeed";
    case ErrorCode::EpsilonBelowFloor: return "EpsilonBelowFloor";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::OutOfWindow: return "OutOfWindow";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::ResourceCap: return "ResourceCap";
  }
  return "Unknown";
}

}  // namespace minklab
