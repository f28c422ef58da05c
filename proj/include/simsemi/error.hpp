#pragma once

#include <stdexcept>
#include <string>

namespace simsemi {

enum class ErrorCode {
  Parse,
  DimensionMismatch,
  FieldMismatch,
  InvalidField,
  SingularMatrix,
  NotNilpotent,
  NotSemisimpleAtZero,
  NotIdempotent,
  RankMismatch,
  InvalidRank,
  RankTooHigh,
  NotSingular,
  FieldNotFinite,
  TooLarge,
  DegreeZero,
  CertificateMismatch,
  Io,
  Internal,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// C API and the CLI can map it onto a status or an exit code.
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

// Internal consistency check; a failure means a bug, never bad input.
inline void ensure(bool condition, const char* what) {
  if (!condition) fail(ErrorCode::Internal, what);
}

}  // namespace simsemi
