#pragma once

#include <stdexcept>
#include <string>

namespace helix3 {

enum class ErrorCode {
  DegenerateInput,
  InvalidParams,
  InvalidFrame,
  InsufficientSpan,
  SpectrumMismatch,
  IndexOutOfStencil,
  InsufficientSamples,
  MissingFrames,
  NotPeriodic,
  DegenerateTorus,
  NearPole,
  NoPoleFound,
  IoError,
  FormatError,
  ParseError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::InvalidFrame: return "InvalidFrame";
    case ErrorCode::InsufficientSpan: return "InsufficientSpan";
    case ErrorCode::SpectrumMismatch: return "SpectrumMismatch";
    case ErrorCode::IndexOutOfStencil: return "IndexOutOfStencil";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::MissingFrames: return "MissingFrames";
    case ErrorCode::NotPeriodic: return "NotPeriodic";
    case ErrorCode::DegenerateTorus: return "DegenerateTorus";
    case ErrorCode::NearPole: return "NearPole";
    case ErrorCode::NoPoleFound: return "NoPoleFound";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace helix3
