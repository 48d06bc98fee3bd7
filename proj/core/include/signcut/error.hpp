#ifndef SIGNCUT_ERROR_HPP
#define SIGNCUT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace signcut {

enum class ErrorCode {
  kIsolatedVertex,
  kDimensionMismatch,
  kEmptyCluster,
  kZeroVolume,
  kConvergence,
  kBadK,
  kParse,
  kEmptyVocabulary,
  kConflict,
  kDegenerateRows,
  kRankDeficient,
  kSingleClass,
  kTooLarge,
  kInvalidArgument,
  kIo,
};

/// Name used in machine-readable error output, e.g. "IsolatedVertexError".
std::string_view error_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace signcut

#endif  // SIGNCUT_ERROR_HPP
