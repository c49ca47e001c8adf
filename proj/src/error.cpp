#include "orofacial/error.hpp"

namespace orofacial {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUsage: return "usage";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kSchema: return "schema";
    case ErrorCode::kValidation: return "validation";
    case ErrorCode::kInvalidDepth: return "invalid-depth";
    case ErrorCode::kReconstructionFailure: return "reconstruction-failure";
    case ErrorCode::kTooShortRepetition: return "too-short-repetition";
    case ErrorCode::kInsufficientRest: return "insufficient-rest";
    case ErrorCode::kDegenerateRest: return "degenerate-rest";
    case ErrorCode::kDimensionMismatch: return "dimensionality-mismatch";
    case ErrorCode::kTooFewSamples: return "too-few-samples";
    case ErrorCode::kUndefinedCcc: return "undefined-ccc";
    case ErrorCode::kDegenerateGroups: return "degenerate-groups";
    case ErrorCode::kInsufficientGroups: return "insufficient-groups";
    case ErrorCode::kMissingRest: return "missing-rest";
    case ErrorCode::kMissingDepth: return "missing-depth";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

int exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUsage: return 1;
    case ErrorCode::kIo: return 3;
    default: return 2;
  }
}

}  // namespace orofacial
