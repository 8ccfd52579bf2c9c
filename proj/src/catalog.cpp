#include "cup/catalog.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cup/canon.hpp"
#include "cup/parse.hpp"

namespace cup {

const ScenarioEntry* Catalog::find_key(std::string_view key) const {
  for (const ScenarioEntry& entry : entries) {
    if (entry.key == key) return &entry;
  }
  return nullptr;
}

const Catalog& builtin_catalog() {
  static const Catalog catalog = [] {
    Catalog c;
    c.entries = {
        {"AWS", "Amazon Web Services", "i.e", std::nullopt, std::nullopt,
         "Public IaaS: compute, storage, database, and networking resources "
         "provisioned directly to end-users."},
        {"DNB", "DenizBank", "ie", std::nullopt, std::nullopt,
         "Banking IT on an in-house private cloud (Hyper-V virtualization, "
         "System Center management); every SLA stays inside the bank."},
        {"DTO", "Dito", "(s.)s.e", std::nullopt, std::nullopt,
         "Authorized Google Apps reseller adding migration expertise and "
         "management add-ons on top of leased software resources."},
        {"EJT", "easyJet", "ip.s.e", "CRM/PRM", std::nullopt,
         "The Halo airline app is built and hosted on the Azure Service Bus "
         "platform, which runs on Azure's own infrastructure."},
        {"EZS", "EZasset", "p.s.e", std::nullopt, std::nullopt,
         "Asset management SaaS built and operated on Google App Engine."},
        {"FBK", "Facebook", "nps.e", "Social networking", std::nullopt,
         "Social network delivered as SaaS from an in-house platform running "
         "on non-virtualized hardware."},
        {"FRC", "Force.com", "p.e", std::nullopt, std::nullopt,
         "Platform services (Appforce, ISVforce) provisioned directly to "
         "application developers."},
        {"GAN", "Go!Animate", "i.s.e", "User data processing", std::nullopt,
         "Animation web application hosted on leased AWS infrastructure."},
        {"SFR", "Salesforce.com", "ps.e", "CRM/PRM", std::nullopt,
         "CRM SaaS on the Force.com platform, both inside one company; a "
         "future move onto leased AWS infrastructure would conform to "
         "i.ps.e instead."},
        {"ZNG", "Zynga", "(i.)(i)s.e", "Online gaming and meta-gaming",
         std::nullopt,
         "Social games served from a private zCloud that spills over to "
         "leased AWS capacity at peak load."},
    };
    return c;
  }();
  return catalog;
}

namespace {

std::optional<std::string> optional_string(const nlohmann::json& j,
                                           const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<std::string>();
}

}  // namespace

LoadResult catalog_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("version") ||
      doc["version"] != 1 || !doc.contains("entries") ||
      !doc["entries"].is_array()) {
    return {std::nullopt,
            CatalogError{"catalog file must be {version: 1, entries: [...]}", {}}};
  }
  Catalog catalog;
  for (const nlohmann::json& item : doc["entries"]) {
    if (!item.is_object() || !item.contains("key") ||
        !item.contains("pattern")) {
      return {std::nullopt,
              CatalogError{"every entry needs at least 'key' and 'pattern'", {}}};
    }
    ScenarioEntry entry;
    entry.key = item["key"].get<std::string>();
    entry.pattern = item["pattern"].get<std::string>();
    entry.title = item.value("title", std::string{});
    entry.app_type = optional_string(item, "app_type");
    entry.size_unit = optional_string(item, "size_unit");
    entry.source_note = optional_string(item, "source_note");

    if (catalog.find_key(entry.key)) {
      return {std::nullopt,
              CatalogError{"duplicate key '" + entry.key + "'", {}}};
    }
    ParseResult parsed = parse(entry.pattern);
    if (parsed.ok()) {
      AnalyzeResult analyzed = analyze(*parsed.ast);
      if (!analyzed.ok()) {
        return {std::nullopt,
                CatalogError{"entry '" + entry.key + "' has an invalid pattern",
                             std::move(analyzed.diagnostics)}};
      }
    } else {
      return {std::nullopt,
              CatalogError{"entry '" + entry.key + "' has an invalid pattern",
                           std::move(parsed.diagnostics)}};
    }
    catalog.entries.push_back(std::move(entry));
  }
  std::sort(catalog.entries.begin(), catalog.entries.end(),
            [](const ScenarioEntry& a, const ScenarioEntry& b) {
              return a.key < b.key;
            });
  return {std::move(catalog), std::nullopt};
}

LoadResult load_catalog(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return {std::nullopt, CatalogError{"cannot open '" + path + "'", {}}};
  }
  nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded()) {
    return {std::nullopt, CatalogError{"'" + path + "' is not valid JSON", {}}};
  }
  return catalog_from_json(doc);
}

nlohmann::json to_json(const Catalog& catalog) {
  std::vector<ScenarioEntry> sorted = catalog.entries;
  std::sort(sorted.begin(), sorted.end(),
            [](const ScenarioEntry& a, const ScenarioEntry& b) {
              return a.key < b.key;
            });
  nlohmann::json entries = nlohmann::json::array();
  for (const ScenarioEntry& entry : sorted) {
    nlohmann::json j{
        {"key", entry.key},
        {"title", entry.title},
        {"pattern", entry.pattern},
    };
    if (entry.app_type) j["app_type"] = *entry.app_type;
    if (entry.size_unit) j["size_unit"] = *entry.size_unit;
    if (entry.source_note) j["source_note"] = *entry.source_note;
    entries.push_back(std::move(j));
  }
  return nlohmann::json{{"version", 1}, {"entries", std::move(entries)}};
}

std::optional<std::string> save_catalog(const Catalog& catalog,
                                        const std::string& path) {
  const std::string temp = path + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) return "cannot write '" + temp + "'";
    out << to_json(catalog).dump(2) << '\n';
    if (!out.good()) return "write to '" + temp + "' failed";
  }
  if (std::rename(temp.c_str(), path.c_str()) != 0) {
    std::remove(temp.c_str());
    return "rename to '" + path + "' failed";
  }
  return std::nullopt;
}

std::optional<Predicate> parse_predicate(std::string_view text) {
  const auto eq = text.find('=');
  const std::string_view name = text.substr(0, eq);
  const std::string_view arg =
      eq == std::string_view::npos ? std::string_view{} : text.substr(eq + 1);
  Predicate p{PredicateKind::HasMediator};
  if (name == "has_mediator") {
    p.kind = PredicateKind::HasMediator;
    return p;
  }
  if (name == "has_hybrid") {
    p.kind = PredicateKind::HasHybrid;
    return p;
  }
  if (name == "private_cloud") {
    p.kind = PredicateKind::PrivateCloud;
    return p;
  }
  if (name == "nonvirtualized_hw") {
    p.kind = PredicateKind::NonvirtualizedHw;
    return p;
  }
  if (name == "level_present") {
    auto level = level_from_name(arg);
    if (!level) return std::nullopt;
    p.kind = PredicateKind::LevelPresent;
    p.level_a = *level;
    return p;
  }
  if (name == "external_sla_at") {
    const auto colon = arg.find(':');
    if (colon == std::string_view::npos) return std::nullopt;
    auto a = level_from_name(arg.substr(0, colon));
    auto b = level_from_name(arg.substr(colon + 1));
    if (!a || !b) return std::nullopt;
    p.kind = PredicateKind::ExternalSlaAt;
    p.level_a = *a;
    p.level_b = *b;
    return p;
  }
  if (name == "app_type") {
    p.kind = PredicateKind::AppType;
    p.text = std::string(arg);
    return p;
  }
  return std::nullopt;
}

namespace {

bool level_in_ast(const PatternAst& ast, Level level);

bool level_in_group(const Group& group, Level level) {
  for (const Group& nested : group.groups) {
    if (level_in_group(nested, level)) return true;
  }
  for (const Section& section : group.sections) {
    if (section.level == level) return true;
  }
  return false;
}

bool level_in_ast(const PatternAst& ast, Level level) {
  for (const Group& group : ast.groups) {
    if (level_in_group(group, level)) return true;
  }
  for (const Section& section : ast.sections) {
    if (section.level == level) return true;
  }
  return false;
}

bool matches(const Predicate& p, const ScenarioEntry& entry,
             const PatternAst& ast, const ProvisioningGraph& graph) {
  switch (p.kind) {
    case PredicateKind::HasMediator:
      return std::any_of(graph.nodes.begin(), graph.nodes.end(),
                         [](const StakeholderNode& n) {
                           return n.kind == NodeKind::Mediator;
                         });
    case PredicateKind::HasHybrid:
      return !graph.merges.empty();
    case PredicateKind::PrivateCloud:
      return graph.private_cloud;
    case PredicateKind::NonvirtualizedHw:
      return std::any_of(graph.nodes.begin(), graph.nodes.end(),
                         [](const StakeholderNode& n) {
                           return n.level == Level::Hardware &&
                                  !n.virtualized_hw;
                         });
    case PredicateKind::LevelPresent:
      return level_in_ast(ast, p.level_a);
    case PredicateKind::ExternalSlaAt:
      return std::any_of(graph.edges.begin(), graph.edges.end(),
                         [&](const ProvisioningEdge& e) {
                           return e.sla == SlaKind::External &&
                                  graph.nodes[e.provider].level == p.level_a &&
                                  graph.nodes[e.consumer].level == p.level_b;
                         });
    case PredicateKind::AppType:
      return entry.app_type && *entry.app_type == p.text;
  }
  return false;
}

PatternAst strip_sizes(const PatternAst& ast);

Group strip_sizes(const Group& group) {
  Group out = group;
  for (Group& nested : out.groups) nested = strip_sizes(nested);
  for (Section& section : out.sections) section.size.reset();
  return out;
}

PatternAst strip_sizes(const PatternAst& ast) {
  PatternAst out = ast;
  for (Group& group : out.groups) group = strip_sizes(group);
  for (Section& section : out.sections) section.size.reset();
  return out;
}

}  // namespace

std::vector<ScenarioEntry> query(const Catalog& catalog,
                                 const std::vector<Predicate>& predicates) {
  std::vector<ScenarioEntry> result;
  for (const ScenarioEntry& entry : catalog.entries) {
    ParseResult parsed = parse(entry.pattern);
    if (!parsed.ok()) continue;  // ingest validation makes this unreachable
    AnalyzeResult analyzed = analyze(*parsed.ast);
    if (!analyzed.ok()) continue;
    const bool all = std::all_of(
        predicates.begin(), predicates.end(), [&](const Predicate& p) {
          return matches(p, entry, *parsed.ast, *analyzed.graph);
        });
    if (all) result.push_back(entry);
  }
  return result;
}

std::vector<ScenarioEntry> find_conforming(const Catalog& catalog,
                                           const PatternAst& pattern) {
  const std::string wanted = print(canonicalize(strip_sizes(pattern)));
  std::vector<ScenarioEntry> result;
  for (const ScenarioEntry& entry : catalog.entries) {
    ParseResult parsed = parse(entry.pattern);
    if (!parsed.ok()) continue;
    if (print(canonicalize(strip_sizes(*parsed.ast))) == wanted) {
      result.push_back(entry);
    }
  }
  return result;
}

}  // namespace cup
