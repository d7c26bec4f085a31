#pragma once

#include <stdexcept>
#include <string>

namespace steklov {

enum class ErrorCode {
  InvalidSpec,
  DegenerateCell,
  HoleRequired,
  OutOfRange,
  RateViolation,
  NothingToEliminate,
  SingularInterior,
  NotPositiveDefinite,
  AllNeutral,
  NotApplicable,
  InvalidEnclosure,
  ScheduleTooCoarse,
  ParseError,
  ValidationError,
};

const char* error_code_name(ErrorCode code);

// Single exception type for the whole library; the code distinguishes causes
// so callers can branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& message);

}  // namespace steklov
