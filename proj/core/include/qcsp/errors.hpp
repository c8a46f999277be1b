#pragma once

#include <stdexcept>
#include <string>

namespace qcsp {

// Malformed textual input. line and column are 1-based; 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column)
      : std::runtime_error(format(message, line, column)), line_(line), column_(column) {}

  [[nodiscard]] int line() const noexcept { return line_; }
  [[nodiscard]] int column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, int line, int column) {
    if (line <= 0) return message;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
  }

  int line_;
  int column_;
};

// A size or cost limit refused the request.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qcsp
