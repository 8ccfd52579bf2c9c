#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cup/ast.hpp"
#include "cup/diagnostics.hpp"
#include "cup/graph.hpp"

namespace cup {

struct AnalyzeResult {
  std::optional<ProvisioningGraph> graph;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return graph.has_value(); }
};

// Derives the provisioning graph: organization splits at dots, native vs
// non-native providers, mediators (equal-level consumer after groups, M.I/M.II
// with mandatory feeder dots per M.III), hybrid merges with H.IV size totals,
// and the private-cloud flag.
AnalyzeResult analyze(const PatternAst& ast);

// Unit multiplier for merge totals, e.g. "hundreds" -> 100, "1000" -> 1000.
// Unknown unit words are carried opaquely (no multiplier).
struct SizeUnit {
  std::string name;                          // empty when unspecified
  std::optional<std::uint64_t> multiplier;
};

SizeUnit parse_unit(std::string_view name);

struct Report {
  std::string pattern;
  const ProvisioningGraph* graph = nullptr;  // borrowed
  SizeUnit unit;
};

Report explain(const ProvisioningGraph& graph, std::string pattern,
               SizeUnit unit = {});

std::string report_text(const Report& report);
nlohmann::json report_json(const Report& report);

// The merging provider that fronts a hybrid: the unique org-internal feeder
// of a merge point, when exactly one exists. Drives renderer placement.
std::optional<int> classify_spillover(const ProvisioningGraph& graph);
std::optional<int> spillover_of(const ProvisioningGraph& graph,
                                const MergePoint& merge);

}  // namespace cup
