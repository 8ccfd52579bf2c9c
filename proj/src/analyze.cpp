#include "cup/analyze.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

namespace cup {

namespace {

// Union-find with min-id roots, so organization ordinals follow the
// left-to-right construction order of nodes.
class OrgSets {
 public:
  int make() {
    parent_.push_back(static_cast<int>(parent_.size()));
    return static_cast<int>(parent_.size()) - 1;
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

class Analyzer {
 public:
  AnalyzeResult run(const PatternAst& ast) {
    const Span whole{0, static_cast<std::uint32_t>(ast.source.size())};
    build_unit(ast.groups, ast.sections, whole, true);
    if (has_error(diags_)) return {std::nullopt, std::move(diags_)};
    finalize();
    return {std::move(graph_), std::move(diags_)};
  }

 private:
  // What a finished unit offers to its consumer.
  struct Feed {
    int node = 0;
    Level level = Level::Iaas;
    bool dotted = false;
    Span span;
    std::optional<std::uint64_t> size;
  };

  int add_node(Level level, NodeKind kind, bool virtualized, bool implicit,
               Span span) {
    StakeholderNode node;
    node.id = static_cast<int>(graph_.nodes.size());
    node.level = level;
    node.kind = kind;
    node.virtualized_hw = virtualized;
    node.implicit = implicit;
    node.span = span;
    graph_.nodes.push_back(node);
    sets_.make();
    return node.id;
  }

  void add_edge(int provider, int consumer, bool dotted,
                std::optional<std::uint64_t> size) {
    graph_.edges.push_back({provider, consumer,
                            dotted ? SlaKind::External : SlaKind::Internal,
                            size});
    if (!dotted) sets_.unite(provider, consumer);
  }

  std::optional<Feed> build_unit(const std::vector<Group>& groups,
                                 const std::vector<Section>& sections,
                                 Span span, bool is_top) {
    std::vector<Feed> feeds;
    for (const Group& group : groups) {
      auto feed = build_unit(group.groups, group.sections, group.span, false);
      if (feed) feeds.push_back(*feed);
    }
    if (has_error(diags_)) return std::nullopt;

    std::size_t idx = 0;
    const Section* hw_section = nullptr;
    if (!sections.empty() && sections.front().level == Level::Hardware) {
      hw_section = &sections.front();
      idx = 1;
    }
    // The parser guarantees a provider section at idx; guard hand-built ASTs.
    if (idx >= sections.size()) {
      diags_.push_back(make_error(
          "X.2", "chain has no provider section to consume or provision", span));
      return std::nullopt;
    }

    bool mediator = false;
    if (!feeds.empty()) {
      const Level terminal = feeds.front().level;
      for (std::size_t k = 1; k < feeds.size(); ++k) {
        if (feeds[k].level != terminal) {
          diags_.push_back(make_error(
              "H.0",
              std::string("sibling groups end at different levels (") +
                  level_name(terminal) + " vs " +
                  level_name(feeds[k].level) + ")",
              feeds[k].span));
        }
      }
      if (has_error(diags_)) return std::nullopt;

      if (hw_section) {
        diags_.push_back(make_warning(
            "X.3",
            "non-virtualized hardware declared on a chain fed by groups has "
            "no worked meaning in the notation",
            hw_section->span));
      }
      const Section& first = sections[idx];
      if (first.level < terminal) {
        diags_.push_back(make_error(
            "H.5",
            std::string("section '") + level_letter(first.level) +
                "' after groups lies below the groups' terminal level " +
                level_name(terminal),
            first.span));
        return std::nullopt;
      }
      mediator = first.level == terminal;
      if (mediator) {
        for (const Feed& feed : feeds) {
          if (!feed.dotted) {
            diags_.push_back(make_error(
                "M.III",
                "a group feeding a mediator must end with '.'; a mediator is "
                "a separate legal entity by definition",
                feed.span));
          }
        }
        if (has_error(diags_)) return std::nullopt;
      }
    }

    std::optional<int> prev;
    bool prev_dot = false;
    std::optional<std::uint64_t> prev_size;
    if (hw_section || feeds.empty()) {
      prev = add_node(Level::Hardware, NodeKind::NativeProvider,
                      hw_section == nullptr, hw_section == nullptr,
                      hw_section ? hw_section->span
                                 : Span{span.start, span.start});
      prev_size = hw_section ? hw_section->size : std::nullopt;
    }

    for (std::size_t k = idx; k < sections.size(); ++k) {
      const Section& section = sections[k];
      NodeKind kind = NodeKind::NativeProvider;  // resolved in finalize()
      if (section.level == Level::EndUser) {
        kind = NodeKind::EndUser;
      } else if (k == idx && mediator) {
        kind = NodeKind::Mediator;
      }
      const int node = add_node(section.level, kind, true, false, section.span);
      if (prev) add_edge(*prev, node, prev_dot, prev_size);
      if (k == idx && !feeds.empty()) {
        std::uint64_t total = 0;
        bool all_sized = true;
        for (const Feed& feed : feeds) {
          add_edge(feed.node, node, feed.dotted, feed.size);
          if (feed.size) {
            total += *feed.size;
          } else {
            all_sized = false;
          }
        }
        if (feeds.size() >= 2) {
          graph_.merges.push_back(
              {node, feeds.front().level,
               all_sized ? std::optional<std::uint64_t>(total) : std::nullopt});
        }
      }
      prev = node;
      prev_dot = section.external_dot;
      prev_size = section.size;
    }

    const Section& last = sections.back();
    return Feed{*prev, last.level, last.external_dot, span, last.size};
  }

  void finalize() {
    // Organization ordinals: first appearance of each set root, in node order.
    std::map<int, int> root_to_org;
    for (StakeholderNode& node : graph_.nodes) {
      const int root = sets_.find(node.id);
      auto [it, inserted] =
          root_to_org.emplace(root, static_cast<int>(graph_.orgs.size()));
      if (inserted) {
        Organization org;
        org.id = it->second;
        graph_.orgs.push_back(org);
      }
      node.org = it->second;
      graph_.orgs[it->second].members.push_back(node.id);
    }
    for (Organization& org : graph_.orgs) {
      bool any_nonvirt = false;
      for (int member : org.members) {
        const StakeholderNode& node = graph_.nodes[member];
        if (node.level == Level::Hardware) {
          org.owns_hardware = true;
          if (!node.virtualized_hw) any_nonvirt = true;
        }
      }
      org.native = org.owns_hardware;
      org.virtualized_hw = org.owns_hardware && !any_nonvirt;
      org.end_user_org = org.members.size() == 1 &&
                         graph_.nodes[org.members.front()].level == Level::EndUser;
    }
    for (StakeholderNode& node : graph_.nodes) {
      const Organization& org = graph_.orgs[node.org];
      if (node.kind == NodeKind::NativeProvider ||
          node.kind == NodeKind::NonnativeProvider) {
        node.kind = org.native ? NodeKind::NativeProvider
                               : NodeKind::NonnativeProvider;
      }
      if (node.level != Level::Hardware) {
        node.virtualized_hw = !org.owns_hardware || org.virtualized_hw;
      }
    }
    graph_.private_cloud =
        std::none_of(graph_.edges.begin(), graph_.edges.end(),
                     [](const ProvisioningEdge& edge) {
                       return edge.sla == SlaKind::External;
                     });
  }

  ProvisioningGraph graph_;
  OrgSets sets_;
  std::vector<Diagnostic> diags_;
};

}  // namespace

AnalyzeResult analyze(const PatternAst& ast) { return Analyzer().run(ast); }

SizeUnit parse_unit(std::string_view name) {
  SizeUnit unit;
  unit.name = std::string(name);
  if (name.empty()) return unit;
  if (name == "ones") unit.multiplier = 1;
  if (name == "tens") unit.multiplier = 10;
  if (name == "hundreds") unit.multiplier = 100;
  if (name == "thousands") unit.multiplier = 1000;
  if (name == "millions") unit.multiplier = 1000000;
  if (name == "billions") unit.multiplier = 1000000000;
  if (!unit.multiplier && !name.empty() &&
      name.find_first_not_of("0123456789") == std::string_view::npos) {
    try {
      unit.multiplier = std::stoull(std::string(name));
    } catch (...) {
      unit.multiplier = std::nullopt;
    }
  }
  return unit;
}

Report explain(const ProvisioningGraph& graph, std::string pattern,
               SizeUnit unit) {
  Report report;
  report.pattern = std::move(pattern);
  report.graph = &graph;
  report.unit = std::move(unit);
  return report;
}

namespace {

std::string node_ref(const StakeholderNode& node) {
  std::ostringstream out;
  if (node.level == Level::Hardware) {
    out << (node.virtualized_hw ? "hardware (virtualized)" : "hardware");
  } else {
    out << level_name(node.level);
  }
  out << " #" << node.id;
  return out.str();
}

std::string org_kind_text(const ProvisioningGraph& graph,
                          const Organization& org) {
  if (org.end_user_org) return "end-user organization";
  for (int member : org.members) {
    if (graph.nodes[member].kind == NodeKind::Mediator) {
      return "mediator organization";
    }
  }
  return org.native ? "native provider organization"
                    : "non-native provider organization";
}

std::string roles_text(const Roles& roles) {
  std::string out;
  if (roles.provider) out += "provider";
  if (roles.consumer) out += out.empty() ? "consumer" : ", consumer";
  if (roles.intermediary) out += ", intermediary";
  return out.empty() ? "none" : out;
}

}  // namespace

std::string report_text(const Report& report) {
  const ProvisioningGraph& graph = *report.graph;
  std::ostringstream out;
  out << "pattern: " << report.pattern << '\n';

  out << "pairs:\n";
  for (const ProvisioningEdge& edge : graph.edges) {
    out << "  (" << node_ref(graph.nodes[edge.provider]) << " -> "
        << node_ref(graph.nodes[edge.consumer]) << ") "
        << (edge.sla == SlaKind::External ? "external" : "internal");
    if (edge.size) out << ", size " << *edge.size;
    out << '\n';
  }

  out << "roles:\n";
  for (const StakeholderNode& node : graph.nodes) {
    out << "  " << node_ref(node) << ": " << roles_text(graph.roles_of(node.id))
        << '\n';
  }

  out << "organizations:\n";
  for (const Organization& org : graph.orgs) {
    out << "  org " << org.id << ": " << org_kind_text(graph, org);
    if (org.owns_hardware) {
      out << (org.virtualized_hw ? ", virtualized hardware"
                                 : ", non-virtualized hardware");
    }
    out << ", members {";
    for (std::size_t i = 0; i < org.members.size(); ++i) {
      if (i) out << ", ";
      out << '#' << org.members[i];
    }
    out << "}\n";
  }

  out << "mediators:";
  bool any_mediator = false;
  for (const StakeholderNode& node : graph.nodes) {
    if (node.kind == NodeKind::Mediator) {
      out << (any_mediator ? ", " : " ") << node_ref(node);
      any_mediator = true;
    }
  }
  if (!any_mediator) out << " none";
  out << '\n';

  if (graph.merges.empty()) {
    out << "merges: none\n";
  } else {
    out << "merges:\n";
    for (const MergePoint& merge : graph.merges) {
      out << "  at " << node_ref(graph.nodes[merge.consumer]) << ", merging "
          << level_name(merge.merged_level) << " feeds: ";
      if (!merge.total_size) {
        out << "total size unknown (not every feed carries a size)";
      } else {
        out << "total size " << *merge.total_size;
        if (report.unit.multiplier) {
          out << " = " << *merge.total_size * *report.unit.multiplier << " ("
              << report.unit.name << ")";
        } else if (!report.unit.name.empty()) {
          out << " (unit: " << report.unit.name << ")";
        }
      }
      out << '\n';
    }
  }

  out << "private cloud: " << (graph.private_cloud ? "yes" : "no") << '\n';
  return out.str();
}

nlohmann::json report_json(const Report& report) {
  const ProvisioningGraph& graph = *report.graph;
  nlohmann::json nodes = nlohmann::json::array();
  for (const StakeholderNode& node : graph.nodes) {
    nodes.push_back({
        {"id", node.id},
        {"level", level_name(node.level)},
        {"kind", node_kind_name(node.kind)},
        {"org", node.org},
        {"virtualized_hw", node.virtualized_hw},
        {"implicit", node.implicit},
    });
  }
  nlohmann::json pairs = nlohmann::json::array();
  nlohmann::json slas = nlohmann::json::array();
  for (const ProvisioningEdge& edge : graph.edges) {
    nlohmann::json pair{
        {"provider", edge.provider},
        {"consumer", edge.consumer},
        {"provider_level", level_name(graph.nodes[edge.provider].level)},
        {"consumer_level", level_name(graph.nodes[edge.consumer].level)},
    };
    if (edge.size) pair["size"] = *edge.size;
    pairs.push_back(std::move(pair));
    slas.push_back(edge.sla == SlaKind::External ? "external" : "internal");
  }
  nlohmann::json roles = nlohmann::json::array();
  for (const StakeholderNode& node : graph.nodes) {
    const Roles r = graph.roles_of(node.id);
    nlohmann::json list = nlohmann::json::array();
    if (r.provider) list.push_back("provider");
    if (r.consumer) list.push_back("consumer");
    if (r.intermediary) list.push_back("intermediary");
    roles.push_back(std::move(list));
  }
  nlohmann::json orgs = nlohmann::json::array();
  nlohmann::json native_flags = nlohmann::json::array();
  for (const Organization& org : graph.orgs) {
    orgs.push_back({
        {"id", org.id},
        {"kind", org_kind_text(graph, org)},
        {"members", org.members},
        {"native", org.native},
        {"owns_hardware", org.owns_hardware},
        {"virtualized_hw", org.virtualized_hw},
        {"end_user_org", org.end_user_org},
    });
    native_flags.push_back(org.native);
  }
  nlohmann::json mediators = nlohmann::json::array();
  for (const StakeholderNode& node : graph.nodes) {
    if (node.kind == NodeKind::Mediator) mediators.push_back(node.id);
  }
  nlohmann::json merges = nlohmann::json::array();
  for (const MergePoint& merge : graph.merges) {
    nlohmann::json j{
        {"consumer", merge.consumer},
        {"merged_level", level_name(merge.merged_level)},
    };
    if (merge.total_size) {
      j["total_size"] = *merge.total_size;
      if (report.unit.multiplier) {
        j["total_in_unit"] = *merge.total_size * *report.unit.multiplier;
      }
    }
    if (!report.unit.name.empty()) j["unit"] = report.unit.name;
    merges.push_back(std::move(j));
  }
  return nlohmann::json{
      {"pattern", report.pattern},
      {"nodes", std::move(nodes)},
      {"pairs", std::move(pairs)},
      {"slas", std::move(slas)},
      {"roles", std::move(roles)},
      {"orgs", std::move(orgs)},
      {"native_flags", std::move(native_flags)},
      {"mediators", std::move(mediators)},
      {"merges", std::move(merges)},
      {"private_cloud", graph.private_cloud},
  };
}

std::optional<int> spillover_of(const ProvisioningGraph& graph,
                                const MergePoint& merge) {
  const int consumer_org = graph.nodes[merge.consumer].org;
  std::optional<int> internal_feeder;
  int internal_count = 0;
  for (const ProvisioningEdge& edge : graph.edges) {
    if (edge.consumer != merge.consumer) continue;
    if (graph.nodes[edge.provider].level != merge.merged_level) continue;
    if (graph.nodes[edge.provider].org == consumer_org) {
      ++internal_count;
      internal_feeder = edge.provider;
    }
  }
  if (internal_count == 1) return internal_feeder;
  return std::nullopt;
}

std::optional<int> classify_spillover(const ProvisioningGraph& graph) {
  if (graph.merges.empty()) return std::nullopt;
  return spillover_of(graph, graph.merges.front());
}

}  // namespace cup
