#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mimo3way {

enum class ErrorCode {
  kInvalidInput,
  kRegimeMismatch,
  // A documented precondition of a construction (e.g. the antenna minimum of
  // the balanced unicast scheme) does not hold.
  kPrecondition,
  kValidation,
  kInternal,
};

/// Stable machine-readable name, e.g. "invalid-input".
std::string_view code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace mimo3way
