#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gmoran {

enum class ErrorCode {
  // graph construction / generators
  SelfLoop,
  EmptyGraph,
  InvalidParam,
  Exhausted,
  Disconnected,
  // weights / numerics
  IsolatedNode,
  DimensionMismatch,
  ConstantVector,
  NotSymmetric,
  NotStochastic,
  NotBistochastic,
  ConvergenceFailure,
  DenseOnly,
  // ingestion
  ParseError,
  UnknownNodeId,
  MissingColumn,
  NonNumericCell,
  DuplicateId,
  MissingNode,
  Unimputable,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Process exit code for a failure: 2 for malformed input, 3 for numeric or
/// validation failures.
int exit_code_for(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gmoran
