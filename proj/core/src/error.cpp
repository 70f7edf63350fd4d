#include "netotc/error.hpp"

namespace netotc {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::AsymmetricUndirected: return "AsymmetricUndirected";
    case ErrorCode::ZeroOutDegree: return "ZeroOutDegree";
    case ErrorCode::NotStronglyConnected: return "NotStronglyConnected";
    case ErrorCode::NumericalNonConvergence: return "NumericalNonConvergence";
    case ErrorCode::ModeInvalidForDirected: return "ModeInvalidForDirected";
    case ErrorCode::DirectedInput: return "DirectedInput";
    case ErrorCode::MissingAttributes: return "MissingAttributes";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::MarginalInvalid: return "MarginalInvalid";
    case ErrorCode::NumericalUnderflow: return "NumericalUnderflow";
    case ErrorCode::IterationCapExceeded: return "IterationCapExceeded";
    case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NotSurjective: return "NotSurjective";
    case ErrorCode::NotAFactor: return "NotAFactor";
    case ErrorCode::CommonFactorMismatch: return "CommonFactorMismatch";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
    case ErrorCode::LabelMismatch: return "LabelMismatch";
    case ErrorCode::DegenerateSplit: return "DegenerateSplit";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::MissingFile: return "MissingFile";
    case ErrorCode::CrossGraphEdge: return "CrossGraphEdge";
    case ErrorCode::IndexError: return "IndexError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace netotc
