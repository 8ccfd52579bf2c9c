#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cup/ast.hpp"

namespace cup {

enum class NodeKind { NativeProvider, NonnativeProvider, Mediator, EndUser };

const char* node_kind_name(NodeKind kind);

struct StakeholderNode {
  int id = 0;
  Level level = Level::Iaas;
  NodeKind kind = NodeKind::NativeProvider;
  int org = 0;
  // Meaningful at the bottom of an organization's chain: false only when the
  // organization's hardware is declared with 'n'.
  bool virtualized_hw = true;
  // True for the synthesized hardware node of a chain written without 'n'.
  bool implicit = false;
  Span span;
};

enum class SlaKind { Internal, External };

struct ProvisioningEdge {
  int provider = 0;
  int consumer = 0;
  SlaKind sla = SlaKind::Internal;
  std::optional<std::uint64_t> size;
};

// One hybrid merge: >= 2 feeders at merged_level provisioning to consumer.
// total_size is present iff every in-edge at merged_level carries a size.
struct MergePoint {
  int consumer = 0;
  Level merged_level = Level::Iaas;
  std::optional<std::uint64_t> total_size;
};

struct Organization {
  int id = 0;
  std::vector<int> members;    // node ids, ascending
  bool native = false;         // owns at least one hardware node
  bool owns_hardware = false;
  bool virtualized_hw = true;  // false iff any owned hardware is declared 'n'
  bool end_user_org = false;   // sole member is the end-user
};

struct Roles {
  bool provider = false;
  bool consumer = false;
  bool intermediary = false;
};

struct ProvisioningGraph {
  std::vector<StakeholderNode> nodes;
  std::vector<ProvisioningEdge> edges;
  std::vector<MergePoint> merges;
  std::vector<Organization> orgs;
  bool private_cloud = false;

  // Consumption counts only when the in-edge comes from something written in
  // the pattern; implicit hardware does not make its owner an intermediary.
  Roles roles_of(int node) const;
  std::vector<int> in_edges(int node) const;   // edge indices
  std::vector<int> out_edges(int node) const;  // edge indices
};

nlohmann::json to_json(const ProvisioningGraph& graph);

}  // namespace cup
