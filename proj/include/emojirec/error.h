#pragma once

#include <stdexcept>
#include <string>

namespace emojirec {

enum class ErrorCode {
  kIo,
  kEmptyEmbeddingFile,
  kMalformedRow,
  kDimensionMismatch,
  kSchema,
  kDuplicateCodepoint,
  kEmptyQuery,
  kNoCandidates,
  kNoValidQueries,
  kLengthMismatch,
  kInvalidArgument,
};

const char* ErrorCodeName(ErrorCode code);

// All recoverable failures in the library are reported with this type; the
// code lets callers (the CLI in particular) map failures to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace emojirec
