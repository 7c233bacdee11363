#include "seqsum/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <utility>

#include "seqsum/errors.hpp"

namespace seqsum {
namespace {

constexpr double kMargin = 10.0;
constexpr std::size_t kLabelLimit = 18;

std::string fmt2(double v) {
  if (std::abs(v) < 0.005) v = 0.0;  // keep "-0.00" out of the output
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string truncate_label(const std::string& s) {
  if (s.size() <= kLabelLimit) return s;
  std::string head = s.substr(0, kLabelLimit);
  // Don't cut a UTF-8 code point in half.
  while (!head.empty() && (static_cast<unsigned char>(head.back()) & 0xC0) == 0x80) head.pop_back();
  return head + "…";
}

double clamp_stroke(long support, const LayoutConfig& cfg) {
  double w = static_cast<double>(support) * cfg.link_width_per_sequence;
  return std::min(std::max(w, 1.0), cfg.node_height);
}

Point route_midpoint(const std::vector<Point>& pts) {
  if (pts.size() == 4) {
    // Cubic bezier at t = 0.5.
    return {(pts[0].x + 3 * pts[1].x + 3 * pts[2].x + pts[3].x) / 8.0,
            (pts[0].y + 3 * pts[1].y + 3 * pts[2].y + pts[3].y) / 8.0};
  }
  if (pts.size() % 2 == 1) return pts[pts.size() / 2];
  const Point& a = pts[pts.size() / 2 - 1];
  const Point& b = pts[pts.size() / 2];
  return {(a.x + b.x) / 2.0, (a.y + b.y) / 2.0};
}

std::string path_d(const std::vector<Point>& pts) {
  std::string d = "M " + fmt2(pts[0].x) + " " + fmt2(pts[0].y);
  if (pts.size() == 4) {
    d += " C " + fmt2(pts[1].x) + " " + fmt2(pts[1].y) + ", " + fmt2(pts[2].x) + " " +
         fmt2(pts[2].y) + ", " + fmt2(pts[3].x) + " " + fmt2(pts[3].y);
  } else {
    for (std::size_t i = 1; i < pts.size(); ++i) d += " L " + fmt2(pts[i].x) + " " + fmt2(pts[i].y);
  }
  return d;
}

}  // namespace

const std::string& Style::color_for(int event_id) const {
  static const std::string fallback = "#888888";
  if (palette.empty() || event_id < 0) return fallback;
  return palette[static_cast<std::size_t>(event_id) % palette.size()];
}

std::string render_svg(const Summary& s, const LayoutResult& l, const LayoutConfig& cfg,
                       const Style& style) {
  std::map<int, const SummaryNode*> by_id;
  for (const auto& n : s.nodes) {
    if (l.positions.find(n.id) == l.positions.end())
      throw StructuralError("render_svg: layout has no position for node " + std::to_string(n.id));
    by_id[n.id] = &n;
  }
  for (const auto& [id, p] : l.positions)
    if (by_id.find(id) == by_id.end())
      throw StructuralError("render_svg: layout positions unknown node " + std::to_string(id));

  std::map<std::pair<int, int>, const EdgeRoute*> routes;
  for (const auto& r : l.edge_routes) routes[{r.source, r.target}] = &r;

  auto at = [&](int id) {
    Point p = l.positions.at(id);
    return Point{p.x + kMargin, p.y + kMargin};
  };

  double W = l.width + 2 * kMargin;
  double H = l.height + 2 * kMargin;

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt2(W) +
         "\" height=\"" + fmt2(H) + "\" viewBox=\"0 0 " + fmt2(W) + " " + fmt2(H) + "\">\n";
  svg += "  <rect x=\"0\" y=\"0\" width=\"" + fmt2(W) + "\" height=\"" + fmt2(H) + "\" fill=\"" +
         style.background + "\"/>\n";

  const std::string font = "Helvetica, Arial, sans-serif";

  // Edges first so nodes paint over their endpoints.
  struct DrawnEdge {
    Point mid;
    long support;
  };
  std::vector<DrawnEdge> edge_labels;
  for (const auto& e : s.edges) {
    const SummaryNode* src = by_id.at(e.source);
    const SummaryNode* tgt = by_id.at(e.target);
    if (src->hidden && tgt->hidden) continue;

    std::vector<Point> pts;
    if (src->hidden) {
      // Flow enters from the top margin instead of from the hidden node's box.
      Point t = at(e.target);
      double tx = t.x + cfg.node_width / 2.0;
      pts = {{tx, kMargin / 2.0}, {tx, t.y}};
    } else if (tgt->hidden) {
      Point sp = at(e.source);
      double sx = sp.x + cfg.node_width / 2.0;
      pts = {{sx, sp.y + cfg.node_height}, {sx, H - kMargin / 2.0}};
    } else {
      auto it = routes.find({e.source, e.target});
      if (it == routes.end())
        throw StructuralError("render_svg: layout has no route for edge " +
                              std::to_string(e.source) + "->" + std::to_string(e.target));
      pts.reserve(it->second->points.size());
      for (const auto& p : it->second->points) pts.push_back({p.x + kMargin, p.y + kMargin});
    }

    svg += "  <path d=\"" + path_d(pts) + "\" fill=\"none\" stroke=\"#8a8a8a\" stroke-opacity=\"0.6\" stroke-linecap=\"round\" stroke-width=\"" +
           fmt2(clamp_stroke(e.support, cfg)) + "\"/>\n";
    edge_labels.push_back({route_midpoint(pts), e.support});
  }

  if (s.kind != SummaryKind::LinearSet) {
    for (const auto& el : edge_labels)
      svg += "  <text x=\"" + fmt2(el.mid.x) + "\" y=\"" + fmt2(el.mid.y - 2.0) +
             "\" text-anchor=\"middle\" font-family=\"" + font + "\" font-size=\"" +
             fmt2(style.font_size * 0.9) + "\" fill=\"#555555\">" + std::to_string(el.support) +
             "</text>\n";
  }

  for (const auto& n : s.nodes) {
    if (n.hidden) continue;
    Point p = at(n.id);
    svg += "  <rect x=\"" + fmt2(p.x) + "\" y=\"" + fmt2(p.y) + "\" width=\"" +
           fmt2(cfg.node_width) + "\" height=\"" + fmt2(cfg.node_height) +
           "\" rx=\"3\" fill=\"" + style.color_for(n.event) + "\"/>\n";
    double cx = p.x + cfg.node_width / 2.0;
    double cy = p.y + cfg.node_height / 2.0 + style.font_size * 0.35;
    svg += "  <text x=\"" + fmt2(cx) + "\" y=\"" + fmt2(cy) +
           "\" text-anchor=\"middle\" font-family=\"" + font + "\" font-size=\"" +
           fmt2(style.font_size) + "\" fill=\"#111111\">" +
           xml_escape(truncate_label(n.label)) + "</text>\n";
    if (s.kind == SummaryKind::LinearSet) {
      svg += "  <text x=\"" + fmt2(p.x + cfg.node_width + 4.0) + "\" y=\"" + fmt2(cy) +
             "\" text-anchor=\"start\" font-family=\"" + font + "\" font-size=\"" +
             fmt2(style.font_size * 0.9) + "\" fill=\"#555555\">" + std::to_string(n.support) +
             "</text>\n";
    }
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace seqsum
