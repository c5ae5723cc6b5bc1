#pragma once

#include <stdexcept>
#include <string>

namespace wignerlab {

// Failure categories; numeric values double as CLI exit codes.
enum class ErrorKind { io = 1, validation = 2, degenerate = 3 };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_io(const std::string& msg) {
  throw Error(ErrorKind::io, msg);
}
[[noreturn]] inline void throw_validation(const std::string& msg) {
  throw Error(ErrorKind::validation, msg);
}
[[noreturn]] inline void throw_degenerate(const std::string& msg) {
  throw Error(ErrorKind::degenerate, msg);
}

}  // namespace wignerlab
