#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qsynth {

enum class ErrorCode {
  InvalidArgument,
  DegreeTooHigh,
  UnsupportedSize,
  NotOneAndRealizable,
  MemoryBudgetExceeded,
  BadMagic,
  VersionMismatch,
  TruncatedFile,
  WrongN,
  IoError,
  MissingBank,
  CostExceedsFour,
  NoSolutionWithinBound,
  TimeBudgetExhausted,
  XorBoundInfeasible,
  InternalInconsistency,
};

std::string_view to_string(ErrorCode code) noexcept;

/// The single exception type thrown by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qsynth
