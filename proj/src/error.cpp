#include "gmoran/error.hpp"

namespace gmoran {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::InvalidParam: return "InvalidParam";
    case ErrorCode::Exhausted: return "Exhausted";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::IsolatedNode: return "IsolatedNode";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ConstantVector: return "ConstantVector";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotStochastic: return "NotStochastic";
    case ErrorCode::NotBistochastic: return "NotBistochastic";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::DenseOnly: return "DenseOnly";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownNodeId: return "UnknownNodeId";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::NonNumericCell: return "NonNumericCell";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::MissingNode: return "MissingNode";
    case ErrorCode::Unimputable: return "Unimputable";
  }
  return "Unknown";
}

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::UnknownNodeId:
    case ErrorCode::MissingColumn:
    case ErrorCode::NonNumericCell:
    case ErrorCode::DuplicateId:
    case ErrorCode::MissingNode:
      return 2;
    default:
      return 3;
  }
}

}  // namespace gmoran
