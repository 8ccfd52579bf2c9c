#include "cup/token.hpp"

#include <cctype>
#include <charconv>

namespace cup {

namespace {

bool is_pattern_letter(char c) {
  switch (c) {
    case 'n': case 'i': case 'p': case 's': case 'e':
      return true;
    default:
      return false;
  }
}

char printable(unsigned char c) {
  return std::isprint(c) ? static_cast<char>(c) : '?';
}

}  // namespace

TokenizeResult tokenize(std::string_view text) {
  TokenizeResult result;
  std::uint32_t pos = 0;
  const auto size = static_cast<std::uint32_t>(text.size());
  while (pos < size) {
    const char raw = text[pos];
    const char c = static_cast<char>(
        std::tolower(static_cast<unsigned char>(raw)));
    if (is_pattern_letter(c)) {
      result.tokens.push_back({TokenKind::Letter, c, 0, {pos, pos + 1}});
      ++pos;
      continue;
    }
    if (c == '.') {
      result.tokens.push_back({TokenKind::Dot, 0, 0, {pos, pos + 1}});
      ++pos;
      continue;
    }
    if (c == '(') {
      result.tokens.push_back({TokenKind::LParen, 0, 0, {pos, pos + 1}});
      ++pos;
      continue;
    }
    if (c == ')') {
      result.tokens.push_back({TokenKind::RParen, 0, 0, {pos, pos + 1}});
      ++pos;
      continue;
    }
    if (c == '_' || std::isdigit(static_cast<unsigned char>(c))) {
      const std::uint32_t start = pos;
      if (c == '_') {
        ++pos;
        if (pos >= size || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
          result.diagnostics.push_back(make_error(
              "UnexpectedCharacter", "'_' must be followed by digits",
              {start, start + 1}));
          return result;
        }
      }
      const std::uint32_t digits_start = pos;
      while (pos < size && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      }
      std::uint64_t value = 0;
      const auto [ptr, ec] = std::from_chars(
          text.data() + digits_start, text.data() + pos, value);
      // Bounding quantifiers below 2^32 keeps every hybrid sum inside uint64.
      if (ec != std::errc{} || ptr != text.data() + pos ||
          value > 0xFFFFFFFFull) {
        result.diagnostics.push_back(make_error(
            "E.I.5", "size quantifier out of range", {start, pos}));
        return result;
      }
      result.tokens.push_back({TokenKind::Number, 0, value, {start, pos}});
      continue;
    }
    result.diagnostics.push_back(make_error(
        "UnexpectedCharacter",
        std::string("unexpected character '") + printable(raw) + "'",
        {pos, pos + 1}));
    return result;
  }
  return result;
}

}  // namespace cup
