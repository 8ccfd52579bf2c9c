#include "cup/ast.hpp"

#include <sstream>

namespace cup {

char level_letter(Level level) {
  switch (level) {
    case Level::Hardware: return 'n';
    case Level::Iaas: return 'i';
    case Level::Paas: return 'p';
    case Level::Saas: return 's';
    case Level::EndUser: return 'e';
  }
  return '?';
}

const char* level_name(Level level) {
  switch (level) {
    case Level::Hardware: return "hardware";
    case Level::Iaas: return "iaas";
    case Level::Paas: return "paas";
    case Level::Saas: return "saas";
    case Level::EndUser: return "end-user";
  }
  return "?";
}

std::optional<Level> level_from_letter(char letter) {
  switch (letter) {
    case 'n': return Level::Hardware;
    case 'i': return Level::Iaas;
    case 'p': return Level::Paas;
    case 's': return Level::Saas;
    case 'e': return Level::EndUser;
    default: return std::nullopt;
  }
}

std::optional<Level> level_from_name(std::string_view name) {
  if (name == "hardware") return Level::Hardware;
  if (name == "iaas") return Level::Iaas;
  if (name == "paas") return Level::Paas;
  if (name == "saas") return Level::Saas;
  if (name == "end-user" || name == "end_user") return Level::EndUser;
  if (name.size() == 1) return level_from_letter(name[0]);
  return std::nullopt;
}

namespace {

void print_section(std::ostringstream& out, const Section& section) {
  out << level_letter(section.level);
  if (section.size) out << *section.size;
  if (section.external_dot) out << '.';
}

void print_group(std::ostringstream& out, const Group& group) {
  out << '(';
  for (const Group& nested : group.groups) print_group(out, nested);
  for (const Section& section : group.sections) print_section(out, section);
  out << ')';
}

}  // namespace

std::string print(const Group& group) {
  std::ostringstream out;
  print_group(out, group);
  return out.str();
}

std::string print(const PatternAst& ast) {
  std::ostringstream out;
  for (const Group& group : ast.groups) print_group(out, group);
  for (const Section& section : ast.sections) print_section(out, section);
  return out.str();
}

nlohmann::json to_json(const Section& section) {
  nlohmann::json j{
      {"level", level_name(section.level)},
      {"external", section.external_dot},
      {"span", {section.span.start, section.span.end}},
  };
  if (section.size) j["size"] = *section.size;
  return j;
}

nlohmann::json to_json(const Group& group) {
  nlohmann::json groups = nlohmann::json::array();
  for (const Group& nested : group.groups) groups.push_back(to_json(nested));
  nlohmann::json sections = nlohmann::json::array();
  for (const Section& section : group.sections) {
    sections.push_back(to_json(section));
  }
  return nlohmann::json{
      {"groups", std::move(groups)},
      {"sections", std::move(sections)},
      {"span", {group.span.start, group.span.end}},
  };
}

nlohmann::json to_json(const PatternAst& ast) {
  nlohmann::json groups = nlohmann::json::array();
  for (const Group& group : ast.groups) groups.push_back(to_json(group));
  nlohmann::json sections = nlohmann::json::array();
  for (const Section& section : ast.sections) {
    sections.push_back(to_json(section));
  }
  return nlohmann::json{
      {"groups", std::move(groups)},
      {"sections", std::move(sections)},
  };
}

}  // namespace cup
