#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace netotc {

enum class ErrorCode {
  NonPositiveWeight,
  IndexOutOfRange,
  AsymmetricUndirected,
  ZeroOutDegree,
  NotStronglyConnected,
  NumericalNonConvergence,
  ModeInvalidForDirected,
  DirectedInput,
  MissingAttributes,
  DimensionMismatch,
  MarginalInvalid,
  NumericalUnderflow,
  IterationCapExceeded,
  InstanceTooLarge,
  PreconditionViolated,
  NotSurjective,
  NotAFactor,
  CommonFactorMismatch,
  GenerationFailed,
  LabelMismatch,
  DegenerateSplit,
  ParseError,
  InvariantViolation,
  MissingFile,
  CrossGraphEdge,
  IndexError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace netotc
