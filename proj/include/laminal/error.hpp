#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace laminal {

enum class ErrorCode {
  ParseError,
  DimensionMismatch,
  RowSumError,
  NegativeProbability,
  DeadSamplePoint,
  DuplicateLabel,
  EpsilonOutOfRange,
  ZeroProbabilityEvent,
  NotAncillary,
  WeightArityMismatch,
  InvalidWeights,
  GroundSetMismatch,
  EmptyInput,
  InvalidIndex,
  SizeCapExceeded,
  ThetaSpaceMismatch,
  NotSCEquivalent,
  UnknownSampleLabel,
  InvariantViolation,
};

std::string_view error_name(ErrorCode code) noexcept;

/// The single exception type thrown by the library. `code()` identifies the
/// failure class; `what()` is "<ErrorName>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace laminal
