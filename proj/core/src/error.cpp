#include "signcut/error.hpp"

namespace signcut {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kIsolatedVertex: return "IsolatedVertexError";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kEmptyCluster: return "EmptyClusterError";
    case ErrorCode::kZeroVolume: return "ZeroVolumeError";
    case ErrorCode::kConvergence: return "ConvergenceError";
    case ErrorCode::kBadK: return "BadK";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kEmptyVocabulary: return "EmptyVocabulary";
    case ErrorCode::kConflict: return "ConflictError";
    case ErrorCode::kDegenerateRows: return "DegenerateRows";
    case ErrorCode::kRankDeficient: return "RankDeficient";
    case ErrorCode::kSingleClass: return "SingleClassError";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "IoError";
  }
  return "Error";
}

}  // namespace signcut
