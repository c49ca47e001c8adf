#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orofacial {

enum class ErrorCode {
  kUsage,
  kParse,
  kSchema,
  kValidation,
  kInvalidDepth,
  kReconstructionFailure,
  kTooShortRepetition,
  kInsufficientRest,
  kDegenerateRest,
  kDimensionMismatch,
  kTooFewSamples,
  kUndefinedCcc,
  kDegenerateGroups,
  kInsufficientGroups,
  kMissingRest,
  kMissingDepth,
  kIo,
};

std::string_view to_string(ErrorCode code);

/// Process exit status for a failure of this kind: 1 usage, 2 data/validation, 3 I/O.
int exit_status(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace orofacial
