#include "cup/render.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "cup/analyze.hpp"

namespace cup {

const char* band_name(Band band) {
  switch (band) {
    case Band::Hardware: return "hardware";
    case Band::Virtualization: return "virtualization";
    case Band::Iaas: return "iaas";
    case Band::Paas: return "paas";
    case Band::Saas: return "saas";
    case Band::EndUser: return "end-user";
  }
  return "?";
}

namespace {

Band band_of(const StakeholderNode& node) {
  switch (node.level) {
    case Level::Hardware:
      return node.virtualized_hw ? Band::Virtualization : Band::Hardware;
    case Level::Iaas: return Band::Iaas;
    case Level::Paas: return Band::Paas;
    case Level::Saas: return Band::Saas;
    case Level::EndUser: return Band::EndUser;
  }
  return Band::Iaas;
}

std::string node_label(const StakeholderNode& node) {
  if (node.level == Level::Hardware) {
    return node.virtualized_hw ? "virtualized hardware" : "hardware";
  }
  if (node.kind == NodeKind::EndUser) return "end-user";
  if (node.kind == NodeKind::Mediator) {
    return std::string(level_name(node.level)) + " mediator";
  }
  return std::string(level_name(node.level)) + " provider";
}

std::string cluster_label(const ProvisioningGraph& graph,
                          const Organization& org) {
  std::string label = "org " + std::to_string(org.id);
  if (org.end_user_org) return label + " (end-user)";
  for (int member : org.members) {
    if (graph.nodes[member].kind == NodeKind::Mediator) {
      return label + " (mediator)";
    }
  }
  return label + (org.native ? " (native)" : " (non-native)");
}

}  // namespace

RenderDoc to_renderdoc(const ProvisioningGraph& graph) {
  RenderDoc doc;
  for (const Organization& org : graph.orgs) {
    RenderCluster cluster;
    cluster.id = org.id;
    cluster.label = cluster_label(graph, org);
    if (org.end_user_org) {
      cluster.border = BorderStyle::UserOrg;
    } else {
      cluster.border = org.native ? BorderStyle::Solid : BorderStyle::Dashed;
    }
    doc.clusters.push_back(std::move(cluster));
  }

  // Thick merge line: at the spill-over fronting provider when one exists,
  // otherwise at the merge consumer.
  std::set<int> bars;
  for (const MergePoint& merge : graph.merges) {
    const auto spill = spillover_of(graph, merge);
    bars.insert(spill ? *spill : merge.consumer);
  }

  for (const StakeholderNode& node : graph.nodes) {
    RenderNode rnode;
    rnode.id = node.id;
    rnode.cluster = node.org;
    rnode.band = band_of(node);
    if (node.level == Level::Hardware) {
      rnode.glyph = node.virtualized_hw ? Glyph::VirtualizedHardware
                                        : Glyph::Hardware;
    } else if (node.kind == NodeKind::EndUser) {
      rnode.glyph = Glyph::EndUser;
    } else {
      rnode.glyph = Glyph::Provider;
    }
    rnode.label = node_label(node);
    rnode.merge_bar = bars.count(node.id) > 0;
    doc.nodes.push_back(std::move(rnode));
  }

  for (const ProvisioningEdge& edge : graph.edges) {
    doc.edges.push_back({edge.provider, edge.consumer,
                         edge.sla == SlaKind::External, edge.size});
  }
  return doc;
}

std::string emit_dot(const RenderDoc& doc) {
  if (doc.clusters.empty() && doc.nodes.empty() && doc.edges.empty()) {
    return "digraph cup {}\n";
  }
  std::ostringstream out;
  out << "digraph cup {\n";
  out << "  rankdir=BT;\n";
  out << "  node [fontname=\"Helvetica\"];\n";
  out << "  edge [fontname=\"Helvetica\"];\n";

  std::vector<RenderCluster> clusters = doc.clusters;
  std::sort(clusters.begin(), clusters.end(),
            [](const RenderCluster& a, const RenderCluster& b) {
              return a.id < b.id;
            });
  std::vector<RenderNode> nodes = doc.nodes;
  std::sort(nodes.begin(), nodes.end(),
            [](const RenderNode& a, const RenderNode& b) {
              return a.id < b.id;
            });
  for (const RenderCluster& cluster : clusters) {
    out << "  subgraph cluster_" << cluster.id << " {\n";
    out << "    label=\"" << cluster.label << "\";\n";
    const char* style = cluster.border == BorderStyle::Solid ? "solid"
                        : cluster.border == BorderStyle::Dashed ? "dashed"
                                                                : "dotted";
    out << "    style=" << style << ";\n";
    for (const RenderNode& node : nodes) {
      if (node.cluster != cluster.id) continue;
      out << "    n" << node.id << " [label=\"" << node.label << "\", shape="
          << (node.glyph == Glyph::EndUser ? "oval" : "box");
      if (node.merge_bar) out << ", penwidth=3";
      out << "];\n";
    }
    out << "  }\n";
  }

  std::vector<RenderEdge> edges = doc.edges;
  std::sort(edges.begin(), edges.end(),
            [](const RenderEdge& a, const RenderEdge& b) {
              return std::pair(a.from, a.to) < std::pair(b.from, b.to);
            });
  for (const RenderEdge& edge : edges) {
    out << "  n" << edge.from << " -> n" << edge.to << " [style="
        << (edge.external ? "solid" : "dashed");
    if (edge.size) out << ", label=\"" << *edge.size << "\"";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

namespace {

constexpr int kWidth = 1000;
constexpr int kBandHeight = 120;

std::string xml_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string emit_svg(const RenderDoc& doc) {
  // Rows bottom-up for the bands actually used.
  std::vector<Band> bands;
  for (const RenderNode& node : doc.nodes) bands.push_back(node.band);
  std::sort(bands.begin(), bands.end());
  bands.erase(std::unique(bands.begin(), bands.end()), bands.end());
  std::map<Band, int> row_of;
  for (std::size_t i = 0; i < bands.size(); ++i) row_of[bands[i]] = static_cast<int>(i);
  const int rows = static_cast<int>(bands.size());
  const int height = std::max(rows, 1) * kBandHeight;
  const auto band_top = [&](Band band) {
    return height - (row_of.at(band) + 1) * kBandHeight;
  };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
         "viewBox=\"0 0 " << kWidth << ' ' << height
      << "\" font-family=\"Helvetica,Arial,sans-serif\" font-size=\"13\">\n";

  for (Band band : bands) {
    const int y = band_top(band);
    out << "  <rect class=\"band\" x=\"0\" y=\"" << y << "\" width=\"" << kWidth
        << "\" height=\"" << kBandHeight
        << "\" fill=\"#f7f7f7\" stroke=\"#d9d9d9\"/>\n";
    out << "  <text class=\"band-label\" x=\"6\" y=\"" << y + 16
        << "\" fill=\"#888888\">" << band_name(band) << "</text>\n";
  }

  std::vector<RenderCluster> clusters = doc.clusters;
  std::sort(clusters.begin(), clusters.end(),
            [](const RenderCluster& a, const RenderCluster& b) {
              return a.id < b.id;
            });
  const int cols = std::max<int>(static_cast<int>(clusters.size()), 1);
  const int col_width = kWidth / cols;
  std::map<int, int> col_of;
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    col_of[clusters[i].id] = static_cast<int>(i);
  }

  // Slot out nodes that share an (org, band) cell.
  std::map<std::pair<int, Band>, std::vector<int>> cell_nodes;
  std::vector<RenderNode> nodes = doc.nodes;
  std::sort(nodes.begin(), nodes.end(),
            [](const RenderNode& a, const RenderNode& b) { return a.id < b.id; });
  for (const RenderNode& node : nodes) {
    cell_nodes[{node.cluster, node.band}].push_back(node.id);
  }
  struct Box { int x, y, w, h; };
  std::map<int, Box> box_of;
  for (const RenderNode& node : nodes) {
    const auto& cell = cell_nodes.at({node.cluster, node.band});
    const int slot = static_cast<int>(
        std::find(cell.begin(), cell.end(), node.id) - cell.begin());
    const int slots = static_cast<int>(cell.size());
    const int cell_x = col_of.at(node.cluster) * col_width + 24;
    const int cell_w = col_width - 48;
    const int slot_w = cell_w / slots;
    Box box;
    box.w = std::min(slot_w - 8, 220);
    box.h = 52;
    box.x = cell_x + slot * slot_w + (slot_w - box.w) / 2;
    box.y = band_top(node.band) + (kBandHeight - box.h) / 2;
    box_of[node.id] = box;
  }

  for (const RenderCluster& cluster : clusters) {
    int min_row = rows;
    int max_row = -1;
    for (const RenderNode& node : nodes) {
      if (node.cluster != cluster.id) continue;
      min_row = std::min(min_row, row_of.at(node.band));
      max_row = std::max(max_row, row_of.at(node.band));
    }
    if (max_row < 0) continue;
    const int x = col_of.at(cluster.id) * col_width + 10;
    const int w = col_width - 20;
    const int y = height - (max_row + 1) * kBandHeight + 6;
    const int h = (max_row - min_row + 1) * kBandHeight - 12;
    const char* cls = cluster.border == BorderStyle::Solid ? "org org-native"
                      : cluster.border == BorderStyle::Dashed
                          ? "org org-nonnative"
                          : "org org-user";
    out << "  <rect class=\"" << cls << "\" x=\"" << x << "\" y=\"" << y
        << "\" width=\"" << w << "\" height=\"" << h
        << "\" fill=\"none\" stroke=\"#222222\" stroke-width=\"2\"";
    if (cluster.border == BorderStyle::Dashed) {
      out << " stroke-dasharray=\"10 5\"";
    } else if (cluster.border == BorderStyle::UserOrg) {
      out << " stroke-dasharray=\"2 4\"";
    }
    out << "/>\n";
    out << "  <text class=\"org-label\" x=\"" << x + 8 << "\" y=\"" << y + 16
        << "\" fill=\"#222222\">" << xml_escape(cluster.label) << "</text>\n";
  }

  std::vector<RenderEdge> edges = doc.edges;
  std::sort(edges.begin(), edges.end(),
            [](const RenderEdge& a, const RenderEdge& b) {
              return std::pair(a.from, a.to) < std::pair(b.from, b.to);
            });
  for (const RenderEdge& edge : edges) {
    const Box& a = box_of.at(edge.from);
    const Box& b = box_of.at(edge.to);
    const int x1 = a.x + a.w / 2;
    const int y1 = a.y + a.h / 2;
    const int x2 = b.x + b.w / 2;
    const int y2 = b.y + b.h / 2;
    out << "  <line class=\"" << (edge.external ? "edge edge-external"
                                                : "edge edge-internal")
        << "\" x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2
        << "\" y2=\"" << y2 << "\" stroke=\"#555555\" stroke-width=\"2\"";
    if (!edge.external) out << " stroke-dasharray=\"6 4\"";
    out << "/>\n";
    if (edge.size) {
      out << "  <text class=\"size\" x=\"" << (x1 + x2) / 2 + 6 << "\" y=\""
          << (y1 + y2) / 2 - 4 << "\" fill=\"#333333\">" << *edge.size
          << "</text>\n";
    }
  }

  for (const RenderNode& node : nodes) {
    const Box& box = box_of.at(node.id);
    out << "  <rect class=\"node\" x=\"" << box.x << "\" y=\"" << box.y
        << "\" width=\"" << box.w << "\" height=\"" << box.h
        << "\" fill=\"#ffffff\" stroke=\"#333333\"";
    if (node.glyph == Glyph::EndUser) out << " rx=\"24\"";
    out << "/>\n";
    if (node.merge_bar) {
      out << "  <line class=\"merge-bar\" x1=\"" << box.x + 5 << "\" y1=\""
          << box.y + box.h - 9 << "\" x2=\"" << box.x + box.w - 5 << "\" y2=\""
          << box.y + box.h - 9
          << "\" stroke=\"#000000\" stroke-width=\"5\"/>\n";
    }
    out << "  <text class=\"node-label\" x=\"" << box.x + box.w / 2
        << "\" y=\"" << box.y + 22 << "\" text-anchor=\"middle\">"
        << xml_escape(node.label) << "</text>\n";
  }

  out << "</svg>\n";
  return out.str();
}

}  // namespace cup
