#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "food/diagnostic.hpp"
#include "food/syntax.hpp"

namespace food {

/// Either a program or at least one diagnostic, never both.
struct ParseResult {
  std::optional<Program> program;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return program.has_value(); }
};

/// Parses `.food` text. Consumer bodies are left as written (see desugar).
///
/// Newlines end an expression unless it is inside parentheses, so a program's
/// final expression may follow a bare consumer body on the next line.
ParseResult parse(std::string_view source);

/// parse() that throws Error on failure.
Program parseOrThrow(std::string_view source);

}  // namespace food
