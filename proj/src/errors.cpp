#include "steklov/errors.hpp"

namespace steklov {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::DegenerateCell: return "DegenerateCell";
    case ErrorCode::HoleRequired: return "HoleRequired";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::RateViolation: return "RateViolation";
    case ErrorCode::NothingToEliminate: return "NothingToEliminate";
    case ErrorCode::SingularInterior: return "SingularInterior";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::AllNeutral: return "AllNeutral";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::InvalidEnclosure: return "InvalidEnclosure";
    case ErrorCode::ScheduleTooCoarse: return "ScheduleTooCoarse";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code) {}

void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace steklov
