#pragma once

#include <stdexcept>
#include <string>

namespace sglab {

// Stable error categories. The numeric values are mirrored by sglab_status in
// the C header and must not be reordered.
enum class ErrorCode : int {
  InvalidArgument = 1,
  PreconditionViolation = 2,
  TailNotConverged = 3,
  PoleError = 4,
  DenominatorZero = 5,
  Divergence = 6,
  CflViolation = 7,
  LinearSolve = 8,
  GridMismatch = 9,
  NoConvergence = 10,
  DomainError = 11,
  DegenerateFit = 12,
  GridNotConverged = 13,
  Io = 14,
};

const char* to_string(ErrorCode code) noexcept;

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

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace sglab
