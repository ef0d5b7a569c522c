#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace strongmark {

enum class ErrorCode {
  DimensionMismatch,
  InvalidArgument,
  EmptyCore,
  TooThin,
  TooShort,
  TooSmall,
  InternalInvariant,
  DegenerateDirection,
  InfeasibleSides,
  TilingMismatch,
  UnsupportedGenerator,
  WorldTooSmall,
  SpacingTooSmall,
  WrongMode,
  SearchCapExceeded,
  Overflow,
  Parse,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace strongmark
