#include "emojirec/error.h"

namespace emojirec {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kEmptyEmbeddingFile: return "EmptyEmbeddingFile";
    case ErrorCode::kMalformedRow: return "MalformedRow";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kSchema: return "Schema";
    case ErrorCode::kDuplicateCodepoint: return "DuplicateCodepoint";
    case ErrorCode::kEmptyQuery: return "EmptyQuery";
    case ErrorCode::kNoCandidates: return "NoCandidates";
    case ErrorCode::kNoValidQueries: return "NoValidQueries";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace emojirec
