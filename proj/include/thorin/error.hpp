#pragma once

#include <stdexcept>
#include <string>

namespace thorin {

enum class ErrorCode {
  Domain,
  Divergent,
  UnsupportedFamily,
  NotGgc,
  Overflow,
  Underflow,
  NoConvergence,
  InsufficientMass,
  Degenerate,
  Io,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::Domain, what);
}

}  // namespace thorin
