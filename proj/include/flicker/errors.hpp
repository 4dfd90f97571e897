#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace flicker {

// Process exit codes used by the CLI.
enum class ExitCode : int {
  kSuccess = 0,
  kInputError = 1,
  kFormatError = 2,
  kInvariantViolation = 3,
};

/// Caller supplied something outside an operation's preconditions.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Statistics over a degenerate matrix (zero column sum, zero deviation).
class DegenerateInputError : public InputError {
 public:
  using InputError::InputError;
};

/// Division by a zero or negative decay time.
class SingularityError : public InputError {
 public:
  using InputError::InputError;
};

/// No file matched a sequence locator.
class NotFoundError : public InputError {
 public:
  using InputError::InputError;
};

/// Malformed image or report file. Carries the byte offset where parsing failed.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at byte offset " + std::to_string(offset) + ")"),
        message_(what),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }
  /// The message without the offset suffix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  std::size_t offset_;
};

/// An internal invariant did not hold. Indicates a bug, not bad input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace flicker
