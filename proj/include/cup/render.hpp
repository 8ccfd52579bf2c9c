#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cup/graph.hpp"

namespace cup {

// Vertical strata of the diagram, stacked bottom-up.
enum class Band : std::uint8_t {
  Hardware = 0,
  Virtualization,
  Iaas,
  Paas,
  Saas,
  EndUser
};

const char* band_name(Band band);

enum class BorderStyle { Solid, Dashed, UserOrg };
enum class Glyph { Provider, Consumer, EndUser, Hardware, VirtualizedHardware };

struct RenderCluster {
  int id = 0;
  BorderStyle border = BorderStyle::Solid;
  std::string label;
};

struct RenderNode {
  int id = 0;
  int cluster = 0;
  Band band = Band::Iaas;
  Glyph glyph = Glyph::Provider;
  std::string label;
  bool merge_bar = false;
};

struct RenderEdge {
  int from = 0;
  int to = 0;
  bool external = false;  // solid when external, dashed when internal
  std::optional<std::uint64_t> size;
};

struct RenderDoc {
  std::vector<RenderCluster> clusters;
  std::vector<RenderNode> nodes;
  std::vector<RenderEdge> edges;
};

// Maps every graph node/edge onto exactly one render element: solid border
// for native orgs, dashed for non-native and mediators, dotted for the
// end-user's organization; dashed edges for internal SLAs, solid for
// external; a merge bar at each merge consumer or at the spill-over fronting
// provider when one exists.
RenderDoc to_renderdoc(const ProvisioningGraph& graph);

// Deterministic DOT digraph; byte-identical for equal input.
std::string emit_dot(const RenderDoc& doc);

// Self-contained SVG 1.1 with a built-in layered layout: 1000-unit-wide
// viewBox, 120-unit band rows bottom-up, org columns left to right by id.
std::string emit_svg(const RenderDoc& doc);

}  // namespace cup
