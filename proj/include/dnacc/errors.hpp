#pragma once

#include <stdexcept>
#include <string>

namespace dnacc {

// Failure classes shared across the library. The CLI maps these onto its
// exit-code contract, so throw sites should pick the class deliberately.
enum class ErrorCode {
  ParseError,        // malformed file or string input
  LengthMismatch,    // bit-string length disagrees with the declared shape
  DuplicateIndex,    // strands of one message share an index
  DuplicateData,     // data fields required to be distinct are not
  WrongCount,        // wrong number of strands, reads, or tuple entries
  ParamMismatch,     // two objects built over different system parameters
  SizeMismatch,      // matching endpoints of unequal cardinality
  TooFewCodewords,   // need at least two codewords
  OutOfRange,        // numeric argument outside its documented domain
  NotPowerOfTwo,     // M must be a power of two here
  InvalidInner,      // inner code unusable for the requested construction
  NotLinear,         // generator set is not closed under xor
  OverlapWindow,     // extension windows overlap for this length
  UnsupportedEd,     // operation only defined for e_d = 0
  UnsupportedD,      // closed-form size only known for d in {2, 3}
  EmptySpace,        // requested space has no elements
  AmbiguousMajority, // plurality decoding found no strict majority
  BudgetExceeded,    // enumeration or search larger than the allowed budget
  PreconditionFailed // caller-visible precondition not met
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace dnacc
