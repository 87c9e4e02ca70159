#pragma once

#include <stdexcept>
#include <string>

namespace ncgalois {

enum class ErrorCode {
  InvalidInput,
  DimensionMismatch,
  NotHermitian,
  NoConvergence,
  NotPositiveDefinite,
  NotLatinSquare,
  NotAssociative,
  NoIdentity,
  NoInverse,
  NotASubgroup,
  OrderBoundExceeded,
  ParentMismatch,
  NotAHomomorphism,
  NotUnitary,
  SingularMatrix,
  ZeroVector,
  DecompositionFailed,
  NotIrreducible,
  IncompleteTable,
  NotAnAlgebra,
  NotContained,
  CenterSplitFailed,
  NotInvariantAlgebra,
  NotFaithful,
  InvalidState,
  NotAChain,
};

const char* error_name(ErrorCode code);

// Failures caused by tolerance decisions rather than malformed input.
bool is_numerical(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace ncgalois
