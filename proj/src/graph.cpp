#include "cup/graph.hpp"

namespace cup {

const char* node_kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::NativeProvider: return "native_provider";
    case NodeKind::NonnativeProvider: return "nonnative_provider";
    case NodeKind::Mediator: return "mediator";
    case NodeKind::EndUser: return "end_user";
  }
  return "?";
}

std::vector<int> ProvisioningGraph::in_edges(int node) const {
  std::vector<int> result;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].consumer == node) result.push_back(static_cast<int>(i));
  }
  return result;
}

std::vector<int> ProvisioningGraph::out_edges(int node) const {
  std::vector<int> result;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].provider == node) result.push_back(static_cast<int>(i));
  }
  return result;
}

Roles ProvisioningGraph::roles_of(int node) const {
  Roles roles;
  for (const ProvisioningEdge& edge : edges) {
    if (edge.provider == node) roles.provider = true;
    if (edge.consumer == node && !nodes[edge.provider].implicit) {
      roles.consumer = true;
    }
  }
  roles.intermediary = roles.provider && roles.consumer &&
                       nodes[node].kind != NodeKind::EndUser;
  return roles;
}

nlohmann::json to_json(const ProvisioningGraph& graph) {
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
  nlohmann::json edges = nlohmann::json::array();
  for (const ProvisioningEdge& edge : graph.edges) {
    nlohmann::json j{
        {"provider", edge.provider},
        {"consumer", edge.consumer},
        {"sla", edge.sla == SlaKind::External ? "external" : "internal"},
    };
    if (edge.size) j["size"] = *edge.size;
    edges.push_back(std::move(j));
  }
  nlohmann::json merges = nlohmann::json::array();
  for (const MergePoint& merge : graph.merges) {
    nlohmann::json j{
        {"consumer", merge.consumer},
        {"merged_level", level_name(merge.merged_level)},
    };
    if (merge.total_size) j["total_size"] = *merge.total_size;
    merges.push_back(std::move(j));
  }
  nlohmann::json orgs = nlohmann::json::array();
  for (const Organization& org : graph.orgs) {
    orgs.push_back({
        {"id", org.id},
        {"members", org.members},
        {"native", org.native},
        {"owns_hardware", org.owns_hardware},
        {"virtualized_hw", org.virtualized_hw},
        {"end_user_org", org.end_user_org},
    });
  }
  return nlohmann::json{
      {"nodes", std::move(nodes)},
      {"edges", std::move(edges)},
      {"merges", std::move(merges)},
      {"orgs", std::move(orgs)},
      {"private_cloud", graph.private_cloud},
  };
}

}  // namespace cup
