#pragma once

#include <stdexcept>
#include <string>

namespace csaf {

enum class ErrorCode {
    InvalidArgument,
    NotFound,
    Duplicate,
    TypeMismatch,
    UnknownField,
    VersionUnsupported,
    OutOfRange,
    Conflict,
    Parse,
    Io,
};

const char* to_string(ErrorCode code);

/// Exception carrying a classification that callers (and the HTTP layer) can map.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool condition, ErrorCode code, const std::string& what) {
    if (!condition) fail(code, what);
}

} // namespace csaf
