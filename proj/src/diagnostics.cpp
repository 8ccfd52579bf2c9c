#include "cup/diagnostics.hpp"

#include <algorithm>
#include <sstream>

namespace cup {

Diagnostic make_error(std::string rule_id, std::string message, Span span) {
  return Diagnostic{Severity::Error, std::move(rule_id), std::move(message), span};
}

Diagnostic make_warning(std::string rule_id, std::string message, Span span) {
  return Diagnostic{Severity::Warning, std::move(rule_id), std::move(message), span};
}

bool has_error(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) {
    return d.severity == Severity::Error;
  });
}

std::string render_diagnostic(const Diagnostic& d, std::string_view source,
                              bool color) {
  std::ostringstream out;
  const bool error = d.severity == Severity::Error;
  if (color) out << (error ? "\x1b[31m" : "\x1b[33m");
  out << (error ? "error" : "warning") << '[' << d.rule_id << ']';
  if (color) out << "\x1b[0m";
  out << ": " << d.message << '\n';
  if (!source.empty()) {
    out << "  " << source << '\n';
    const std::size_t start = std::min<std::size_t>(d.span.start, source.size());
    const std::size_t end =
        std::clamp<std::size_t>(d.span.end, start, source.size());
    out << "  " << std::string(start, ' ');
    if (color) out << (error ? "\x1b[31m" : "\x1b[33m");
    out << std::string(std::max<std::size_t>(end - start, 1), '^');
    if (color) out << "\x1b[0m";
    out << '\n';
  }
  return out.str();
}

}  // namespace cup
