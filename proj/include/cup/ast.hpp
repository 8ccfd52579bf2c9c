#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cup/diagnostics.hpp"

namespace cup {

// Abstraction levels in strict ascending provisioning order.
enum class Level : std::uint8_t { Hardware = 0, Iaas, Paas, Saas, EndUser };

char level_letter(Level level);
const char* level_name(Level level);
std::optional<Level> level_from_letter(char letter);
std::optional<Level> level_from_name(std::string_view name);

// One lettered section of a pattern. external_dot records the '.' that may
// follow the letter (never legal after 'n' or 'e').
struct Section {
  Level level = Level::Iaas;
  std::optional<std::uint64_t> size;
  bool external_dot = false;
  Span span;

  // Structural equality; spans are presentation data and do not participate.
  bool operator==(const Section& other) const {
    return level == other.level && size == other.size &&
           external_dot == other.external_dot;
  }
};

// A parenthesized feeder specification. Nested groups precede the group's own
// sections; section levels ascend strictly and never include the end-user.
struct Group {
  std::vector<Group> groups;
  std::vector<Section> sections;
  Span span;

  bool operator==(const Group& other) const {
    return groups == other.groups && sections == other.sections;
  }

  Level terminal_level() const { return sections.back().level; }
};

// Lossless parse tree of one pattern string. sections ends in exactly one
// end-user section; groups, when present, precede all sections.
struct PatternAst {
  std::vector<Group> groups;
  std::vector<Section> sections;
  std::string source;

  bool operator==(const PatternAst& other) const {
    return groups == other.groups && sections == other.sections;
  }
};

// Canonical-case compact text: lowercase letters, sizes as plain digits,
// groups in stored order. parse(print(ast)) is structurally equal to ast.
std::string print(const PatternAst& ast);
std::string print(const Group& group);

nlohmann::json to_json(const Section& section);
nlohmann::json to_json(const Group& group);
nlohmann::json to_json(const PatternAst& ast);

}  // namespace cup
