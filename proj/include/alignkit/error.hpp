#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace alignkit {

enum class ErrorCode {
  EmptyText,
  EmptyInput,
  MalformedLine,
  EmptyVocabulary,
  IoError,
  InvalidOp,
  InvalidShift,
  NonEmptyColumn,
  LastColumn,
  RightmostColumn,
  NoNeighbor,
  NoMultiTokenText,
  EmptyColumn,
  BadColumn,
  BadRow,
  LockConflict,
  InvalidConfig,
  Busy,
  NothingToUndo,
  NothingToRedo,
  SchemaMismatch,
  CorruptGrid,
  NotFound,
  BadRequest,
};

/// Stable machine-readable name, e.g. "NonEmptyColumn".
std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace alignkit
