#pragma once

#include <stdexcept>
#include <string>

namespace qbox {

// Coarse failure classes so the C layer can map exceptions onto status codes
// without parsing messages.
enum class ErrorCode {
  InvalidArgument = 1,
  Range = 2,
  Accuracy = 3,
  Truncation = 4,
  Stall = 5,
  Computation = 6,
  Io = 7,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace qbox
