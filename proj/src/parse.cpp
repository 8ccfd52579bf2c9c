#include "cup/parse.hpp"

#include <string>
#include <utility>

#include "cup/token.hpp"

namespace cup {

namespace {

constexpr int kMaxGroupDepth = 16;
constexpr std::size_t kMaxDiagnostics = 32;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ParseResult run() {
    TokenizeResult lexed = tokenize(text_);
    diags_ = std::move(lexed.diagnostics);
    if (has_error(diags_)) return {std::nullopt, std::move(diags_)};
    tokens_ = std::move(lexed.tokens);

    PatternAst ast;
    ast.source = std::string(text_);
    parse_unit(ast.groups, ast.sections, 0);
    validate_top(ast);
    if (has_error(diags_)) return {std::nullopt, std::move(diags_)};
    return {std::move(ast), std::move(diags_)};
  }

 private:
  bool done() const { return pos_ >= tokens_.size(); }
  const Token& peek() const { return tokens_[pos_]; }
  bool full() const { return diags_.size() >= kMaxDiagnostics; }

  void error(std::string rule, std::string message, Span span) {
    if (!full()) diags_.push_back(make_error(std::move(rule), std::move(message), span));
  }

  void warning(std::string rule, std::string message, Span span) {
    if (!full()) diags_.push_back(make_warning(std::move(rule), std::move(message), span));
  }

  Span end_span() const {
    const auto n = static_cast<std::uint32_t>(text_.size());
    return {n, n};
  }

  // Consumes a balanced token run without recursing; used past the depth cap.
  void skip_balanced_group() {
    int depth = 0;
    while (!done()) {
      if (peek().kind == TokenKind::LParen) ++depth;
      if (peek().kind == TokenKind::RParen) {
        if (depth == 0) {
          ++pos_;
          return;
        }
        --depth;
      }
      ++pos_;
    }
  }

  // Parses one unit body (top level or group interior). Stops at EOF or at a
  // closing paren, which is left for the caller.
  void parse_unit(std::vector<Group>& groups, std::vector<Section>& sections,
                  int depth) {
    while (!done() && !full()) {
      const Token tok = peek();
      switch (tok.kind) {
        case TokenKind::RParen:
          if (depth == 0) {
            error("UnbalancedParen", "unmatched ')'", tok.span);
            ++pos_;
            break;
          }
          return;
        case TokenKind::LParen: {
          if (!sections.empty()) {
            error("GroupAfterSection",
                  "groups must precede all sections of their chain", tok.span);
          }
          if (depth + 1 > kMaxGroupDepth) {
            error("X.4", "group nesting deeper than 16", tok.span);
            ++pos_;
            skip_balanced_group();
            break;
          }
          ++pos_;
          Group group;
          group.span = tok.span;
          parse_unit(group.groups, group.sections, depth + 1);
          if (done() || peek().kind != TokenKind::RParen) {
            error("UnbalancedParen", "unclosed '('", tok.span);
            return;
          }
          group.span.end = peek().span.end;
          ++pos_;
          validate_group(group);
          if (sections.empty()) groups.push_back(std::move(group));
          break;
        }
        case TokenKind::Letter:
          parse_section(sections, depth);
          break;
        case TokenKind::Number:
          error("E.I.3", "size quantifier must follow a section letter",
                tok.span);
          ++pos_;
          break;
        case TokenKind::Dot:
          if (tok.span.start == 0) {
            error("UnexpectedCharacter", "pattern may not start with '.'",
                  tok.span);
          } else {
            error("UnexpectedToken", "unexpected '.'", tok.span);
          }
          ++pos_;
          break;
      }
    }
  }

  void parse_section(std::vector<Section>& sections, int depth) {
    const Token letter = peek();
    Section section;
    section.level = *level_from_letter(letter.letter);
    section.span = letter.span;
    ++pos_;

    if (!done() && peek().kind == TokenKind::Number) {
      section.size = peek().number;
      section.span.end = peek().span.end;
      ++pos_;
      while (!done() && peek().kind == TokenKind::Number) {
        error("E.I.5", "at most one size quantifier per section", peek().span);
        ++pos_;
      }
    }

    if (!done() && peek().kind == TokenKind::Dot) {
      if (section.level == Level::Hardware || section.level == Level::EndUser) {
        error("E.I.6",
              std::string("'.' is not allowed after '") +
                  level_letter(section.level) + "'",
              peek().span);
      } else {
        section.external_dot = true;
        section.span.end = peek().span.end;
      }
      ++pos_;
    }

    if (depth > 0 && section.level == Level::EndUser) {
      error("H.II", "end-user section not allowed inside a group", section.span);
    }
    if (section.level == Level::EndUser && section.size) {
      warning("X.1",
              "size on the end-user section is read as an end-user population; "
              "the end-user section normally holds a single character",
              section.span);
    }

    if (!sections.empty()) {
      const Section& prev = sections.back();
      const Span both{prev.span.start, letter.span.end};
      if (section.level == prev.level) {
        error("E.I.1",
              std::string("duplicate ") + level_name(section.level) + " section",
              both);
      } else if (section.level < prev.level) {
        error("E.I.1",
              std::string("sections out of order: ") + level_name(section.level) +
                  " may not follow " + level_name(prev.level),
              both);
      }
    }
    sections.push_back(section);
  }

  void validate_group(const Group& group) {
    if (group.sections.empty() && group.groups.empty()) {
      error("EmptyGroup", "empty group", group.span);
      return;
    }
    if (group.sections.empty()) {
      error("X.2", "group has nested groups but no consumer section",
            group.span);
      return;
    }
    bool has_provider = false;
    for (const Section& s : group.sections) {
      if (s.level >= Level::Iaas && s.level <= Level::Saas) has_provider = true;
    }
    if (!has_provider) {
      error("E.I.2", "group must contain at least one of 'i', 'p', 's'",
            group.span);
    }
  }

  void validate_top(const PatternAst& ast) {
    bool has_provider = false;
    for (const Section& s : ast.sections) {
      if (s.level >= Level::Iaas && s.level <= Level::Saas) has_provider = true;
    }
    const bool ends_in_user =
        !ast.sections.empty() && ast.sections.back().level == Level::EndUser;
    if (!has_provider && !ast.groups.empty()) {
      error("X.2", "groups present but no consumer section follows them",
            {0, static_cast<std::uint32_t>(text_.size())});
      return;
    }
    if (!ends_in_user) {
      error("E.I.2", "pattern must end with an end-user section 'e'",
            end_span());
    }
    if (!has_provider) {
      error("E.I.2",
            "pattern must consist of at least two sections including one of "
            "'i', 'p', 's'",
            {0, static_cast<std::uint32_t>(text_.size())});
    }
  }

  std::string_view text_;
  std::vector<Token> tokens_;
  std::vector<Diagnostic> diags_;
  std::size_t pos_ = 0;
};

}  // namespace

ParseResult parse(std::string_view text) { return Parser(text).run(); }

}  // namespace cup
