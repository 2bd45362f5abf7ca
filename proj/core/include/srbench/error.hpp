#pragma once

#include <stdexcept>
#include <string>

namespace srbench {

// Every failure surfaced by the library carries one of these kinds. The CLI
// maps them onto process exit codes (see exit_code()).
enum class ErrorKind {
  kInvalidArgument,   // violated precondition on a value (sizes, params)
  kFileNotFound,
  kIo,                // unreadable/unwritable path
  kUnsupportedFormat, // decodes, but not a format we accept (e.g. 16-bit PNG)
  kCorruptData,
  kDimensionMismatch,
  kUnmatchedFiles,
  kConfig,
  kModelFailure,      // external model command failed or broke its contract
  kNonFiniteAggregate,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

const char* to_string(ErrorKind kind) noexcept;

// Process exit code for an error kind. 0 and 1 are reserved for success and
// command-line usage errors respectively.
int exit_code(ErrorKind kind) noexcept;

}  // namespace srbench
