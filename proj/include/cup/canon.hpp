#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cup/ast.hpp"

namespace cup {

// Sorts sibling groups (recursively) by the byte order of their printed
// canonical text; sibling order carries no meaning. Idempotent.
PatternAst canonicalize(const PatternAst& ast);
Group canonicalize(const Group& group);

// print(canonicalize(a)) == print(canonicalize(b)). Sizes and dots are part
// of pattern identity.
bool equivalent(const PatternAst& a, const PatternAst& b);

enum class DiffKind { Sla, Size, Level, Group };

const char* diff_kind_name(DiffKind kind);

struct Difference {
  DiffKind kind;
  std::string detail;
};

// Section-aligned mismatch listing; empty iff equivalent(a, b).
std::vector<Difference> diff(const PatternAst& a, const PatternAst& b);

nlohmann::json to_json(const std::vector<Difference>& differences);

}  // namespace cup
