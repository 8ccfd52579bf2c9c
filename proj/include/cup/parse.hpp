#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "cup/ast.hpp"
#include "cup/diagnostics.hpp"

namespace cup {

struct ParseResult {
  std::optional<PatternAst> ast;       // present iff no error diagnostic
  std::vector<Diagnostic> diagnostics; // errors and warnings (X.1)
  bool ok() const { return ast.has_value(); }
};

// Recursive-descent parse enforcing the purely syntactic rules: fixed section
// order, mandatory end-user plus one of i/p/s, per-section arity, dot
// placement, balanced parentheses with groups before sections, nesting
// depth <= 16. Never throws on any input byte sequence.
ParseResult parse(std::string_view text);

}  // namespace cup
