#pragma once

#include <map>
#include <string>
#include <vector>

#include "seqsum/summary.hpp"

namespace seqsum {

struct LayoutConfig {
  double node_width = 110.0;
  double node_height = 26.0;
  double horizontal_gap = 32.0;
  double vertical_gap = 36.0;
  double canvas_width = 960.0;  // also the vertical extent used by the LinearSet index scale
  double link_width_per_sequence = 1.0;
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

struct EdgeRoute {
  int source = 0;
  int target = 0;
  std::vector<Point> points;  // 2 = straight segment, 4 = cubic control points, else polyline

  bool operator==(const EdgeRoute&) const = default;
};

struct LayoutResult {
  std::map<int, Point> positions;  // node id -> top-left corner of its box
  std::vector<EdgeRoute> edge_routes;
  double width = 0.0;
  double height = 0.0;

  bool operator==(const LayoutResult&) const = default;
};

// Tidy tree: subtrees packed edge-to-edge with contour scans, parents centered over
// their children, y = depth * (nodeHeight + verticalGap). Hidden nodes get positions
// too; rendering decides what to draw. Throws StructuralError on a malformed tree.
LayoutResult layout_tree(const Summary& s, const LayoutConfig& cfg);

// Layered digraph: longest-path layering (every node sits strictly below all of its
// predecessors), four down-up barycenter sweeps over a dummy-expanded layering with
// the best ordering seen kept, equal slot spacing within a layer.
LayoutResult layout_dag(const Summary& s, const LayoutConfig& cfg);

// One column per pattern, columns ordered by descending clusterSize; y encodes
// avgIndex, ties and inversions resolved by stacking that preserves pattern order.
LayoutResult layout_linear_set(const Summary& s, const LayoutConfig& cfg);

LayoutResult layout_summary(const Summary& s, const LayoutConfig& cfg);  // dispatch on kind

std::string layout_to_json(const LayoutResult& l);

}  // namespace seqsum
