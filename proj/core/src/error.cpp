#include "qsynth/error.hpp"

namespace qsynth {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorCode::UnsupportedSize: return "UnsupportedSize";
    case ErrorCode::NotOneAndRealizable: return "NotOneAndRealizable";
    case ErrorCode::MemoryBudgetExceeded: return "MemoryBudgetExceeded";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::TruncatedFile: return "TruncatedFile";
    case ErrorCode::WrongN: return "WrongN";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::MissingBank: return "MissingBank";
    case ErrorCode::CostExceedsFour: return "CostExceedsFour";
    case ErrorCode::NoSolutionWithinBound: return "NoSolutionWithinBound";
    case ErrorCode::TimeBudgetExhausted: return "TimeBudgetExhausted";
    case ErrorCode::XorBoundInfeasible: return "XorBoundInfeasible";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
  }
  return "Unknown";
}

}  // namespace qsynth
