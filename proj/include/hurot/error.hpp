#pragma once

#include <stdexcept>
#include <string>

namespace hurot {

enum class ErrorCode {
  kZeroMass,
  kNonPositiveScale,
  kMissingLocation,
  kUnsupportedKind,
  kShapeMismatch,
  kDimMismatch,
  kInfeasible,
  kOutsideDomain,
  kNonPositiveValues,
  kInvalidArgument,
  kParse,
};

const char* to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hurot
