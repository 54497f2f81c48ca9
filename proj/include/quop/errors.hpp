#pragma once

#include <stdexcept>
#include <string>

namespace quop {

// Invalid or inconsistent input data: malformed files, graph invariant
// violations, unknown node ids.
class DataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Parse failure in a text input; carries the 1-based line number.
class ParseError : public DataError {
  public:
    ParseError(const std::string& path, int line, const std::string& what)
        : DataError(path + ":" + std::to_string(line) + ": " + what), line_(line) {}

    int line() const { return line_; }

  private:
    int line_;
};

// Numeric guard tripped: dimension cap exceeded or eigensolver failed to
// converge. Never raised silently.
class NumericError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace quop
