#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "cup/diagnostics.hpp"

namespace cup {

enum class TokenKind { Letter, Dot, LParen, RParen, Number };

struct Token {
  TokenKind kind;
  char letter = 0;             // lowercase n/i/p/s/e when kind == Letter
  std::uint64_t number = 0;    // value when kind == Number
  Span span;
};

struct TokenizeResult {
  std::vector<Token> tokens;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return !has_error(diagnostics); }
};

// Letters fold to lowercase; digits (with an optional leading '_') form one
// Number token; everything else, whitespace included, stops the scan with an
// UnexpectedCharacter at the first offending byte.
TokenizeResult tokenize(std::string_view text);

}  // namespace cup
