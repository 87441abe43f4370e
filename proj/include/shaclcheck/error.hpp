#pragma once

#include <stdexcept>
#include <string>

namespace shaclcheck {

// Base class for all errors raised by the library. Construction-time
// validation failures, semantic preconditions, and parse errors all derive
// from it so callers can catch one type at the CLI boundary.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parse error carrying a 1-based source position.
struct ParseError : Error {
  int line;
  int col;
  ParseError(int line_, int col_, const std::string& msg)
      : Error("line " + std::to_string(line_) + ", col " +
              std::to_string(col_) + ": " + msg),
        line(line_),
        col(col_) {}
};

}  // namespace shaclcheck
