#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _WIN32
#include <io.h>
#define CUP_ISATTY _isatty(1)
#else
#include <unistd.h>
#define CUP_ISATTY isatty(1)
#endif

#include "cup/analyze.hpp"
#include "cup/canon.hpp"
#include "cup/catalog.hpp"
#include "cup/parse.hpp"
#include "cup/render.hpp"

namespace {

using nlohmann::json;

bool use_color() {
  return CUP_ISATTY && std::getenv("NO_COLOR") == nullptr;
}

// '-' reads the pattern from stdin, '@path' from a file.
std::optional<std::string> resolve_pattern(const std::string& arg) {
  std::string text;
  if (arg == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    text = buf.str();
  } else if (!arg.empty() && arg.front() == '@') {
    std::ifstream in(arg.substr(1), std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot read '" << arg.substr(1) << "'\n";
      return std::nullopt;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  } else {
    return arg;
  }
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) {
    text.pop_back();
  }
  return text;
}

void print_diagnostics(const std::vector<cup::Diagnostic>& diags,
                       std::string_view source, std::ostream& out) {
  for (const cup::Diagnostic& d : diags) {
    out << cup::render_diagnostic(d, source, use_color());
  }
}

json diagnostics_json(const std::vector<cup::Diagnostic>& diags) {
  json out = json::array();
  for (const cup::Diagnostic& d : diags) {
    out.push_back({
        {"severity", d.severity == cup::Severity::Error ? "error" : "warning"},
        {"rule", d.rule_id},
        {"message", d.message},
        {"span", {d.span.start, d.span.end}},
    });
  }
  return out;
}

struct ParsedPattern {
  cup::ParseResult parsed;
  std::string text;
};

// Shared front half of most subcommands; on failure prints diagnostics and
// leaves parsed.ast empty.
std::optional<ParsedPattern> parse_or_report(const std::string& arg,
                                             bool json_mode) {
  auto text = resolve_pattern(arg);
  if (!text) return std::nullopt;
  ParsedPattern result{cup::parse(*text), *text};
  if (!result.parsed.ok()) {
    if (json_mode) {
      std::cout << json{{"ok", false},
                        {"diagnostics", diagnostics_json(result.parsed.diagnostics)}}
                       .dump(2)
                << '\n';
    } else {
      print_diagnostics(result.parsed.diagnostics, *text, std::cerr);
    }
  }
  return result;
}

void dump_ast_text(const cup::PatternAst& ast) {
  std::cout << "pattern: " << cup::print(ast) << '\n';
  const std::function<void(const cup::Group&, int)> dump_group =
      [&](const cup::Group& group, int indent) {
        std::cout << std::string(indent, ' ') << "group " << cup::print(group)
                  << '\n';
        for (const cup::Group& nested : group.groups) {
          dump_group(nested, indent + 2);
        }
        for (const cup::Section& s : group.sections) {
          std::cout << std::string(indent + 2, ' ') << "section "
                    << cup::level_name(s.level);
          if (s.size) std::cout << " size " << *s.size;
          std::cout << (s.external_dot ? " external" : " internal") << '\n';
        }
      };
  for (const cup::Group& group : ast.groups) dump_group(group, 2);
  for (const cup::Section& s : ast.sections) {
    std::cout << "  section " << cup::level_name(s.level);
    if (s.size) std::cout << " size " << *s.size;
    if (s.level != cup::Level::EndUser) {
      std::cout << (s.external_dot ? " external" : " internal");
    }
    std::cout << '\n';
  }
}

int cmd_parse(const std::string& arg, bool json_mode) {
  auto p = parse_or_report(arg, json_mode);
  if (!p) return 2;
  if (!p->parsed.ok()) return 1;
  if (json_mode) {
    std::cout << json{{"ok", true},
                      {"ast", cup::to_json(*p->parsed.ast)},
                      {"diagnostics", diagnostics_json(p->parsed.diagnostics)}}
                     .dump(2)
              << '\n';
  } else {
    dump_ast_text(*p->parsed.ast);
    print_diagnostics(p->parsed.diagnostics, p->text, std::cerr);
  }
  return 0;
}

int cmd_check(const std::string& arg, bool json_mode) {
  auto text = resolve_pattern(arg);
  if (!text) return 2;
  cup::ParseResult parsed = cup::parse(*text);
  std::vector<cup::Diagnostic> diags = parsed.diagnostics;
  if (parsed.ok()) {
    cup::AnalyzeResult analyzed = cup::analyze(*parsed.ast);
    diags.insert(diags.end(), analyzed.diagnostics.begin(),
                 analyzed.diagnostics.end());
  }
  const bool failed = cup::has_error(diags);
  if (json_mode) {
    std::cout << json{{"ok", !failed}, {"diagnostics", diagnostics_json(diags)}}
                     .dump(2)
              << '\n';
  } else {
    print_diagnostics(diags, *text, std::cout);
    if (diags.empty()) std::cout << "ok\n";
  }
  return failed ? 1 : 0;
}

int cmd_explain(const std::string& arg, const std::string& unit,
                bool json_mode) {
  auto p = parse_or_report(arg, json_mode);
  if (!p) return 2;
  if (!p->parsed.ok()) return 1;
  cup::AnalyzeResult analyzed = cup::analyze(*p->parsed.ast);
  if (!analyzed.ok()) {
    if (json_mode) {
      std::cout << json{{"ok", false},
                        {"diagnostics", diagnostics_json(analyzed.diagnostics)}}
                       .dump(2)
                << '\n';
    } else {
      print_diagnostics(analyzed.diagnostics, p->text, std::cerr);
    }
    return 1;
  }
  print_diagnostics(p->parsed.diagnostics, p->text, std::cerr);
  print_diagnostics(analyzed.diagnostics, p->text, std::cerr);
  const cup::Report report = cup::explain(
      *analyzed.graph, cup::print(*p->parsed.ast), cup::parse_unit(unit));
  if (json_mode) {
    std::cout << cup::report_json(report).dump(2) << '\n';
  } else {
    std::cout << cup::report_text(report);
  }
  return 0;
}

int cmd_canon(const std::string& arg, bool json_mode) {
  auto p = parse_or_report(arg, json_mode);
  if (!p) return 2;
  if (!p->parsed.ok()) return 1;
  const std::string canonical = cup::print(cup::canonicalize(*p->parsed.ast));
  if (json_mode) {
    std::cout << json{{"canonical", canonical}}.dump(2) << '\n';
  } else {
    std::cout << canonical << '\n';
  }
  return 0;
}

int cmd_eq(const std::string& arg_a, const std::string& arg_b, bool json_mode) {
  auto text_a = resolve_pattern(arg_a);
  auto text_b = resolve_pattern(arg_b);
  if (!text_a || !text_b) return 2;
  cup::ParseResult a = cup::parse(*text_a);
  cup::ParseResult b = cup::parse(*text_b);
  if (!a.ok() || !b.ok()) {
    if (json_mode) {
      json diags = diagnostics_json(a.diagnostics);
      for (auto& d : diagnostics_json(b.diagnostics)) diags.push_back(d);
      std::cout << json{{"ok", false}, {"diagnostics", std::move(diags)}}.dump(2)
                << '\n';
    } else {
      if (!a.ok()) print_diagnostics(a.diagnostics, *text_a, std::cerr);
      if (!b.ok()) print_diagnostics(b.diagnostics, *text_b, std::cerr);
    }
    return 2;
  }
  const bool same = cup::equivalent(*a.ast, *b.ast);
  const auto differences = cup::diff(*a.ast, *b.ast);
  if (json_mode) {
    std::cout << json{{"equivalent", same},
                      {"differences", cup::to_json(differences)}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << (same ? "equivalent" : "different") << '\n';
    for (const cup::Difference& d : differences) {
      std::cout << "  [" << cup::diff_kind_name(d.kind) << "] " << d.detail
                << '\n';
    }
  }
  return same ? 0 : 1;
}

int cmd_render(const std::string& arg, const std::string& format,
               const std::string& output, bool json_mode) {
  auto p = parse_or_report(arg, json_mode);
  if (!p) return 2;
  if (!p->parsed.ok()) return 1;
  cup::AnalyzeResult analyzed = cup::analyze(*p->parsed.ast);
  if (!analyzed.ok()) {
    if (json_mode) {
      std::cout << json{{"ok", false},
                        {"diagnostics", diagnostics_json(analyzed.diagnostics)}}
                       .dump(2)
                << '\n';
    } else {
      print_diagnostics(analyzed.diagnostics, p->text, std::cerr);
    }
    return 1;
  }
  const cup::RenderDoc doc = cup::to_renderdoc(*analyzed.graph);
  const std::string rendered =
      format == "svg" ? cup::emit_svg(doc) : cup::emit_dot(doc);
  if (json_mode && output.empty()) {
    std::cout << json{{"format", format}, {"content", rendered}}.dump(2)
              << '\n';
  } else if (output.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream out(output, std::ios::binary | std::ios::trunc);
    if (!out) {
      std::cerr << "error: cannot write '" << output << "'\n";
      return 1;
    }
    out << rendered;
  }
  return 0;
}

int load_or_builtin(const std::string& file, cup::Catalog& catalog) {
  if (file.empty()) {
    catalog = cup::builtin_catalog();
    return 0;
  }
  cup::LoadResult loaded = cup::load_catalog(file);
  if (!loaded.ok()) {
    std::cerr << "error: " << loaded.error->message << '\n';
    for (const cup::Diagnostic& d : loaded.error->diagnostics) {
      std::cerr << cup::render_diagnostic(d, {}, use_color());
    }
    return 1;
  }
  catalog = std::move(*loaded.catalog);
  return 0;
}

void print_entries(const std::vector<cup::ScenarioEntry>& entries,
                   bool json_mode) {
  if (json_mode) {
    cup::Catalog slice;
    slice.entries = entries;
    std::cout << cup::to_json(slice).dump(2) << '\n';
    return;
  }
  for (const cup::ScenarioEntry& entry : entries) {
    std::cout << entry.key << "  " << entry.pattern;
    if (!entry.title.empty()) std::cout << "  (" << entry.title << ")";
    if (entry.app_type) std::cout << "  [" << *entry.app_type << "]";
    std::cout << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cloud usage pattern toolkit"};
  app.require_subcommand(1);

  std::string pattern, pattern_b, unit, format = "dot", output, file;
  std::vector<std::string> predicate_args;
  bool json_mode = false;

  auto* parse_cmd = app.add_subcommand("parse", "parse a pattern and dump its tree");
  parse_cmd->add_option("pattern", pattern, "pattern text, '-' for stdin, '@file' to read a file")->required();
  parse_cmd->add_flag("--json", json_mode, "machine-readable output");

  auto* check_cmd = app.add_subcommand("check", "validate a pattern, reporting rule ids");
  check_cmd->add_option("pattern", pattern)->required();
  check_cmd->add_flag("--json", json_mode);

  auto* explain_cmd = app.add_subcommand("explain", "derive and report the provisioning semantics");
  explain_cmd->add_option("pattern", pattern)->required();
  explain_cmd->add_option("--unit", unit, "size unit, e.g. hundreds or 1000");
  explain_cmd->add_flag("--json", json_mode);

  auto* canon_cmd = app.add_subcommand("canon", "print the canonical form");
  canon_cmd->add_option("pattern", pattern)->required();
  canon_cmd->add_flag("--json", json_mode);

  auto* eq_cmd = app.add_subcommand("eq", "compare two patterns for equivalence");
  eq_cmd->add_option("a", pattern)->required();
  eq_cmd->add_option("b", pattern_b)->required();
  eq_cmd->add_flag("--json", json_mode);

  auto* render_cmd = app.add_subcommand("render", "emit the visual form");
  render_cmd->add_option("pattern", pattern)->required();
  render_cmd->add_option("--format", format, "dot or svg")
      ->check(CLI::IsMember({"dot", "svg"}))
      ->required();
  render_cmd->add_option("-o,--output", output, "write to a file instead of stdout");
  render_cmd->add_flag("--json", json_mode);

  auto* catalog_cmd = app.add_subcommand("catalog", "scenario catalog");
  catalog_cmd->require_subcommand(1);
  auto* list_cmd = catalog_cmd->add_subcommand("list", "list entries");
  list_cmd->add_option("--file", file, "catalog file (defaults to the built-in corpus)");
  list_cmd->add_flag("--json", json_mode);
  auto* query_cmd = catalog_cmd->add_subcommand("query", "filter by predicates");
  query_cmd->add_option("predicates", predicate_args,
                        "has_mediator has_hybrid private_cloud nonvirtualized_hw "
                        "level_present=L external_sla_at=L:L app_type=T")
      ->required();
  query_cmd->add_option("--file", file);
  query_cmd->add_flag("--json", json_mode);
  auto* find_cmd = catalog_cmd->add_subcommand("find", "entries equivalent to a pattern (sizes ignored)");
  find_cmd->add_option("pattern", pattern)->required();
  find_cmd->add_option("--file", file);
  find_cmd->add_flag("--json", json_mode);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (parse_cmd->parsed()) return cmd_parse(pattern, json_mode);
  if (check_cmd->parsed()) return cmd_check(pattern, json_mode);
  if (explain_cmd->parsed()) return cmd_explain(pattern, unit, json_mode);
  if (canon_cmd->parsed()) return cmd_canon(pattern, json_mode);
  if (eq_cmd->parsed()) return cmd_eq(pattern, pattern_b, json_mode);
  if (render_cmd->parsed()) return cmd_render(pattern, format, output, json_mode);

  cup::Catalog catalog;
  if (int rc = load_or_builtin(file, catalog); rc != 0) return rc;
  if (list_cmd->parsed()) {
    print_entries(catalog.entries, json_mode);
    return 0;
  }
  if (query_cmd->parsed()) {
    std::vector<cup::Predicate> predicates;
    for (const std::string& arg : predicate_args) {
      auto p = cup::parse_predicate(arg);
      if (!p) {
        std::cerr << "error: unknown predicate '" << arg << "'\n";
        return 2;
      }
      predicates.push_back(*p);
    }
    print_entries(cup::query(catalog, predicates), json_mode);
    return 0;
  }
  if (find_cmd->parsed()) {
    auto p = parse_or_report(pattern, json_mode);
    if (!p) return 2;
    if (!p->parsed.ok()) return 1;
    print_entries(cup::find_conforming(catalog, *p->parsed.ast), json_mode);
    return 0;
  }
  return 2;
}
