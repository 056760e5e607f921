#pragma once

#include <stdexcept>
#include <string>

namespace fraisse {

enum class ErrorCode {
  invalid_input,  // malformed values, unknown labels, wrong shapes
  precondition,   // inputs well formed but an operation's precondition fails
  size_limit,     // ground set or outcome table exceeds the supported cap
  internal,       // a construction that is valid by theorem failed its self-check
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace fraisse
