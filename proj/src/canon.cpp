#include "cup/canon.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace cup {

Group canonicalize(const Group& group) {
  Group out = group;
  for (Group& nested : out.groups) nested = canonicalize(nested);
  std::stable_sort(out.groups.begin(), out.groups.end(),
                   [](const Group& a, const Group& b) {
                     return print(a) < print(b);
                   });
  return out;
}

PatternAst canonicalize(const PatternAst& ast) {
  PatternAst out = ast;
  for (Group& group : out.groups) group = canonicalize(group);
  std::stable_sort(out.groups.begin(), out.groups.end(),
                   [](const Group& a, const Group& b) {
                     return print(a) < print(b);
                   });
  out.source = print(out);
  return out;
}

bool equivalent(const PatternAst& a, const PatternAst& b) {
  return print(canonicalize(a)) == print(canonicalize(b));
}

const char* diff_kind_name(DiffKind kind) {
  switch (kind) {
    case DiffKind::Sla: return "sla";
    case DiffKind::Size: return "size";
    case DiffKind::Level: return "level";
    case DiffKind::Group: return "group";
  }
  return "?";
}

namespace {

std::string print_section_text(const Section& section) {
  std::ostringstream out;
  out << level_letter(section.level);
  if (section.size) out << *section.size;
  if (section.external_dot) out << '.';
  return out.str();
}

void diff_sections(const std::vector<Section>& a, const std::vector<Section>& b,
                   std::vector<Difference>& out) {
  // Levels are unique within one chain, so align by level.
  std::map<Level, const Section*> in_a, in_b;
  for (const Section& s : a) in_a[s.level] = &s;
  for (const Section& s : b) in_b[s.level] = &s;
  for (const auto& [level, sa] : in_a) {
    auto it = in_b.find(level);
    if (it == in_b.end()) {
      out.push_back({DiffKind::Level, std::string(level_name(level)) +
                                          " section present only in a"});
      continue;
    }
    const Section* sb = it->second;
    if (sa->external_dot != sb->external_dot) {
      out.push_back({DiffKind::Sla,
                     std::string("sla at ") + level_name(level) + ": " +
                         (sa->external_dot ? "external" : "internal") +
                         " in a vs " +
                         (sb->external_dot ? "external" : "internal") +
                         " in b"});
    }
    if (sa->size != sb->size) {
      auto text = [](const Section* s) {
        return s->size ? std::to_string(*s->size) : std::string("none");
      };
      out.push_back({DiffKind::Size, std::string("size at ") +
                                         level_name(level) + ": " + text(sa) +
                                         " in a vs " + text(sb) + " in b"});
    }
  }
  for (const auto& [level, sb] : in_b) {
    if (!in_a.count(level)) {
      out.push_back({DiffKind::Level, std::string(level_name(level)) +
                                          " section present only in b"});
    }
  }
}

}  // namespace

std::vector<Difference> diff(const PatternAst& a, const PatternAst& b) {
  std::vector<Difference> out;
  const PatternAst ca = canonicalize(a);
  const PatternAst cb = canonicalize(b);
  if (print(ca) == print(cb)) return out;

  // Sibling groups as multisets of canonical text.
  std::map<std::string, int> group_count;
  for (const Group& g : ca.groups) ++group_count[print(g)];
  for (const Group& g : cb.groups) --group_count[print(g)];
  for (const auto& [text, count] : group_count) {
    for (int i = 0; i < count; ++i) {
      out.push_back({DiffKind::Group, "group " + text + " present only in a"});
    }
    for (int i = 0; i < -count; ++i) {
      out.push_back({DiffKind::Group, "group " + text + " present only in b"});
    }
  }
  diff_sections(ca.sections, cb.sections, out);
  if (out.empty()) {
    // Canonical texts differ but section alignment found nothing specific;
    // report the remaining textual difference verbatim.
    out.push_back({DiffKind::Level, "patterns differ: " + print(ca) + " vs " +
                                        print(cb)});
  }
  return out;
}

nlohmann::json to_json(const std::vector<Difference>& differences) {
  nlohmann::json out = nlohmann::json::array();
  for (const Difference& d : differences) {
    out.push_back({{"kind", diff_kind_name(d.kind)}, {"detail", d.detail}});
  }
  return out;
}

}  // namespace cup
