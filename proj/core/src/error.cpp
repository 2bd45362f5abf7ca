#include "srbench/error.hpp"

namespace srbench {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid argument";
    case ErrorKind::kFileNotFound: return "file not found";
    case ErrorKind::kIo: return "i/o error";
    case ErrorKind::kUnsupportedFormat: return "unsupported format";
    case ErrorKind::kCorruptData: return "corrupt data";
    case ErrorKind::kDimensionMismatch: return "dimension mismatch";
    case ErrorKind::kUnmatchedFiles: return "unmatched files";
    case ErrorKind::kConfig: return "configuration error";
    case ErrorKind::kModelFailure: return "model failure";
    case ErrorKind::kNonFiniteAggregate: return "non-finite aggregate";
  }
  return "unknown error";
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kConfig: return 2;
    case ErrorKind::kFileNotFound: return 3;
    case ErrorKind::kIo: return 4;
    case ErrorKind::kUnsupportedFormat: return 5;
    case ErrorKind::kCorruptData: return 6;
    case ErrorKind::kDimensionMismatch: return 7;
    case ErrorKind::kUnmatchedFiles: return 8;
    case ErrorKind::kInvalidArgument: return 9;
    case ErrorKind::kModelFailure: return 10;
    case ErrorKind::kNonFiniteAggregate: return 11;
  }
  return 12;
}

}  // namespace srbench
