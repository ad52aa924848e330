#include "alignkit/error.hpp"

namespace alignkit {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyText: return "EmptyText";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::EmptyVocabulary: return "EmptyVocabulary";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidOp: return "InvalidOp";
    case ErrorCode::InvalidShift: return "InvalidShift";
    case ErrorCode::NonEmptyColumn: return "NonEmptyColumn";
    case ErrorCode::LastColumn: return "LastColumn";
    case ErrorCode::RightmostColumn: return "RightmostColumn";
    case ErrorCode::NoNeighbor: return "NoNeighbor";
    case ErrorCode::NoMultiTokenText: return "NoMultiTokenText";
    case ErrorCode::EmptyColumn: return "EmptyColumn";
    case ErrorCode::BadColumn: return "BadColumn";
    case ErrorCode::BadRow: return "BadRow";
    case ErrorCode::LockConflict: return "LockConflict";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Busy: return "Busy";
    case ErrorCode::NothingToUndo: return "NothingToUndo";
    case ErrorCode::NothingToRedo: return "NothingToRedo";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::CorruptGrid: return "CorruptGrid";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::BadRequest: return "BadRequest";
  }
  return "Unknown";
}

}  // namespace alignkit
