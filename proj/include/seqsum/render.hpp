#pragma once

#include <string>
#include <vector>

#include "seqsum/layout.hpp"
#include "seqsum/summary.hpp"

namespace seqsum {

// Visual style shared by all three summary kinds. The palette is a fixed
// categorical cycle keyed by event id, so the same event keeps its color
// across techniques rendered over one dataset.
struct Style {
  std::vector<std::string> palette = {
      "#4e79a7", "#f28e2b", "#e15759", "#76b7b4", "#59a14f", "#edc948", "#b07aa1",
      "#ff9da7", "#9c755f", "#bab0ac", "#86bcb6", "#d37295", "#a0cbe8", "#ffbe7d",
  };
  double font_size = 11.0;
  std::string background = "#ffffff";

  const std::string& color_for(int event_id) const;
};

// Emits an SVG 1.1 document for a laid-out summary. Deterministic byte-for-byte:
// coordinates are printed with fixed two-decimal formatting and element order is
// fixed (background, edges, edge labels, nodes, node labels).
//
// Visible nodes become a rect + truncated text label. Every edge becomes a path
// whose stroke width is support × linkWidthPerSequence clamped to
// [1, nodeHeight]; edges out of hidden nodes are drawn as short stubs dropping
// in from the canvas top margin. Count labels sit at the route midpoint for
// Tree/DAG summaries and beside each node for LinearSet summaries.
//
// Throws StructuralError when the layout is missing a node referenced by the
// summary (or vice versa).
std::string render_svg(const Summary& s, const LayoutResult& l, const LayoutConfig& cfg,
                       const Style& style = Style{});

}  // namespace seqsum
