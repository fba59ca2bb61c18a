#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace treeapprox {

enum class ErrorCode {
  // input / validation errors
  MalformedInput,
  AsymmetricMatrix,
  NegativeOrZeroOffDiagonal,
  TriangleViolation,
  DuplicateLabel,
  UnknownLabel,
  NonPositiveScale,
  SinglePoint,
  NotASpanningTree,
  NotZeroHyperbolic,
  TooLarge,
  OutOfRange,
  InfeasibleConstraints,
  IoFailure,
  // a proven bound failed to hold; always a bug
  BoundViolation,
};

std::string_view error_name(ErrorCode code);

// True for everything the CLI reports with exit status 2.
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::vector<std::size_t> witness = {})
      : std::runtime_error(message), code_(code), witness_(std::move(witness)) {}

  ErrorCode code() const noexcept { return code_; }

  // Point indices that exhibit the failure (triple for a triangle violation,
  // quadruple for a four-point violation). Empty when not applicable.
  const std::vector<std::size_t>& witness() const noexcept { return witness_; }

 private:
  ErrorCode code_;
  std::vector<std::size_t> witness_;
};

}  // namespace treeapprox
