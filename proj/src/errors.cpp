#include "dnacc/errors.hpp"

namespace dnacc {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::DuplicateIndex: return "DuplicateIndex";
    case ErrorCode::DuplicateData: return "DuplicateData";
    case ErrorCode::WrongCount: return "WrongCount";
    case ErrorCode::ParamMismatch: return "ParamMismatch";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::TooFewCodewords: return "TooFewCodewords";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NotPowerOfTwo: return "NotPowerOfTwo";
    case ErrorCode::InvalidInner: return "InvalidInner";
    case ErrorCode::NotLinear: return "NotLinear";
    case ErrorCode::OverlapWindow: return "OverlapWindow";
    case ErrorCode::UnsupportedEd: return "UnsupportedEd";
    case ErrorCode::UnsupportedD: return "UnsupportedD";
    case ErrorCode::EmptySpace: return "EmptySpace";
    case ErrorCode::AmbiguousMajority: return "AmbiguousMajority";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
  }
  return "Unknown";
}

}  // namespace dnacc
