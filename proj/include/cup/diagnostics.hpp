#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cup {

// Byte range into the original pattern text, end exclusive.
struct Span {
  std::uint32_t start = 0;
  std::uint32_t end = 0;
  bool operator==(const Span&) const = default;
};

enum class Severity { Error, Warning };

// Rule-anchored finding. rule_id values come from the closed set documented
// in docs/diagnostics.md (E.I.*, H.*, M.III, X.*, plus the lexical ids).
struct Diagnostic {
  Severity severity = Severity::Error;
  std::string rule_id;
  std::string message;
  Span span;
};

Diagnostic make_error(std::string rule_id, std::string message, Span span);
Diagnostic make_warning(std::string rule_id, std::string message, Span span);

bool has_error(const std::vector<Diagnostic>& diags);

// "error[E.I.1]: ..." plus a caret line under the offending bytes.
std::string render_diagnostic(const Diagnostic& d, std::string_view source, bool color);

}  // namespace cup
