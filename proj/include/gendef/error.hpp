#pragma once

#include <stdexcept>
#include <string>

namespace gendef {

/// Input-format error. `line` is 1-based; 0 means the input is a bare
/// string with no line structure. `column` is a 1-based character offset.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& reason, int line, int column)
      : std::runtime_error(render(reason, line, column)),
        reason_(reason),
        line_(line),
        column_(column) {}

  const std::string& reason() const { return reason_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string render(const std::string& reason, int line, int column) {
    std::string where = line > 0 ? "line " + std::to_string(line) +
                                       ", column " + std::to_string(column)
                                 : "offset " + std::to_string(column);
    return where + ": " + reason;
  }

  std::string reason_;
  int line_;
  int column_;
};

}  // namespace gendef
