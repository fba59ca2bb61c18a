#include "treeapprox/error.hpp"

namespace treeapprox {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::AsymmetricMatrix: return "AsymmetricMatrix";
    case ErrorCode::NegativeOrZeroOffDiagonal: return "NegativeOrZeroOffDiagonal";
    case ErrorCode::TriangleViolation: return "TriangleViolation";
    case ErrorCode::DuplicateLabel: return "DuplicateLabel";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::NonPositiveScale: return "NonPositiveScale";
    case ErrorCode::SinglePoint: return "SinglePoint";
    case ErrorCode::NotASpanningTree: return "NotASpanningTree";
    case ErrorCode::NotZeroHyperbolic: return "NotZeroHyperbolic";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::InfeasibleConstraints: return "InfeasibleConstraints";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::BoundViolation: return "BoundViolation";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) { return code != ErrorCode::BoundViolation; }

}  // namespace treeapprox
