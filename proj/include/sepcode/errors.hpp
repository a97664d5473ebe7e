#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sepcode {

enum class ErrorCode {
  Truncated,
  MalformedPrefix,
  Malformed,
  InvalidEmbedding,
  TooSmall,
  CannotTriangulate,
  NotPlanar,
  Disconnected,
  NotRefinement,
  NotTriangulation,
  InconsistentLabels,
  CapTooLarge,
  NotInClass,
  TooLarge,
  IndexOutOfRange,
  NotPatchable,
  GenusTooLarge,
  CapInfeasible,
  EmptyInput,
  VersionMismatch,
  ClassUnknown,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
  case ErrorCode::Truncated: return "Truncated";
  case ErrorCode::MalformedPrefix: return "MalformedPrefix";
  case ErrorCode::Malformed: return "Malformed";
  case ErrorCode::InvalidEmbedding: return "InvalidEmbedding";
  case ErrorCode::TooSmall: return "TooSmall";
  case ErrorCode::CannotTriangulate: return "CannotTriangulate";
  case ErrorCode::NotPlanar: return "NotPlanar";
  case ErrorCode::Disconnected: return "Disconnected";
  case ErrorCode::NotRefinement: return "NotRefinement";
  case ErrorCode::NotTriangulation: return "NotTriangulation";
  case ErrorCode::InconsistentLabels: return "InconsistentLabels";
  case ErrorCode::CapTooLarge: return "CapTooLarge";
  case ErrorCode::NotInClass: return "NotInClass";
  case ErrorCode::TooLarge: return "TooLarge";
  case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
  case ErrorCode::NotPatchable: return "NotPatchable";
  case ErrorCode::GenusTooLarge: return "GenusTooLarge";
  case ErrorCode::CapInfeasible: return "CapInfeasible";
  case ErrorCode::EmptyInput: return "EmptyInput";
  case ErrorCode::VersionMismatch: return "VersionMismatch";
  case ErrorCode::ClassUnknown: return "ClassUnknown";
  case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure the library reports is an Error carrying a machine-readable code.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &what) { throw Error(code, what); }

} // namespace sepcode
