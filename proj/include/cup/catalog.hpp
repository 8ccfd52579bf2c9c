#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cup/analyze.hpp"
#include "cup/ast.hpp"

namespace cup {

struct ScenarioEntry {
  std::string key;
  std::string title;
  std::string pattern;
  std::optional<std::string> app_type;
  std::optional<std::string> size_unit;
  std::optional<std::string> source_note;
};

struct Catalog {
  std::vector<ScenarioEntry> entries;  // sorted by key

  const ScenarioEntry* find_key(std::string_view key) const;
};

// The ten built-in real-world scenarios (AWS .. DTO).
const Catalog& builtin_catalog();

struct CatalogError {
  std::string message;
  std::vector<Diagnostic> diagnostics;  // for ValidationFailed
};

struct LoadResult {
  std::optional<Catalog> catalog;
  std::optional<CatalogError> error;
  bool ok() const { return catalog.has_value(); }
};

// Loads {version:1, entries:[...]}, validating that every pattern parses and
// analyzes without errors and that keys are unique.
LoadResult load_catalog(const std::string& path);
LoadResult catalog_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const Catalog& catalog);

// Whole-file atomic write (temp + rename), keys sorted.
std::optional<std::string> save_catalog(const Catalog& catalog,
                                        const std::string& path);

enum class PredicateKind {
  HasMediator,
  HasHybrid,
  PrivateCloud,
  NonvirtualizedHw,
  LevelPresent,
  ExternalSlaAt,
  AppType
};

struct Predicate {
  PredicateKind kind;
  Level level_a = Level::Iaas;  // LevelPresent / ExternalSlaAt
  Level level_b = Level::Iaas;  // ExternalSlaAt target
  std::string text;             // AppType
};

// Accepts has_mediator, has_hybrid, private_cloud, nonvirtualized_hw,
// level_present=<level>, external_sla_at=<level>:<level>, app_type=<tag>.
// Level names: hardware/iaas/paas/saas/end_user or the letters n/i/p/s/e.
std::optional<Predicate> parse_predicate(std::string_view text);

// Entries whose analyzed graphs satisfy the conjunction, in key order.
std::vector<ScenarioEntry> query(const Catalog& catalog,
                                 const std::vector<Predicate>& predicates);

// Entries equivalent to the query pattern with sizes ignored.
std::vector<ScenarioEntry> find_conforming(const Catalog& catalog,
                                           const PatternAst& pattern);

}  // namespace cup
