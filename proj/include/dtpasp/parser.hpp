#pragma once

#include <string>
#include <string_view>

#include "dtpasp/ast.hpp"

namespace dtpasp {

// Syntax or validation failure, carrying the 1-based source position.
class ParseError : public ProgramError {
 public:
  ParseError(const std::string& msg, int line, int column)
      : ProgramError("parse error at " + std::to_string(line) + ":" +
                     std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}
  int line;
  int column;
};

// Parses DTPASP surface syntax. Both `not` and `\+` are accepted as the
// negation token. Comments run from '%' to end of line.
Program parse(std::string_view source);

}  // namespace dtpasp
