#include "seqsum/layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include <json.hpp>

#include "seqsum/errors.hpp"

namespace seqsum {
namespace {

void require_valid(const Summary& s, SummaryKind kind, const char* what) {
  if (s.kind != kind) throw StructuralError(std::string(what) + ": summary kind mismatch");
  auto bad = validate(s);
  if (!bad.empty()) {
    std::string msg = std::string(what) + ": invalid summary";
    for (const auto& b : bad) msg += "; " + b;
    throw StructuralError(msg);
  }
}

void finish_extents(LayoutResult& l, const LayoutConfig& cfg) {
  double w = 0.0, h = 0.0;
  for (const auto& [id, p] : l.positions) {
    w = std::max(w, p.x + cfg.node_width);
    h = std::max(h, p.y + cfg.node_height);
  }
  for (const auto& r : l.edge_routes)
    for (const auto& p : r.points) {
      w = std::max(w, p.x);
      h = std::max(h, p.y);
    }
  l.width = w;
  l.height = h;
}

void add_vertical_curve(LayoutResult& l, const LayoutConfig& cfg, int source, int target,
                        double sx, double sy_bottom, double tx, double ty_top) {
  double my = (sy_bottom + ty_top) / 2.0;
  l.edge_routes.push_back({source, target, {{sx, sy_bottom}, {sx, my}, {tx, my}, {tx, ty_top}}});
  (void)cfg;
}

// ---------------------------------------------------------------------------
// Tidy tree

struct TreeLevelSpan {
  double left;
  double right;
};

struct TreeSub {
  std::vector<std::pair<int, double>> centers;  // node id -> center x, subtree-local coords
  std::vector<TreeLevelSpan> contour;           // box extents per relative depth
};

struct TreeLayouter {
  const Summary& s;
  const LayoutConfig& cfg;
  std::vector<std::vector<int>> children;  // by node index
  std::vector<int> ids;

  TreeSub place(std::size_t v) {
    const double half = cfg.node_width / 2.0;
    std::vector<std::size_t> kids;
    for (int cid : children[v]) kids.push_back(index_of(cid));

    TreeSub sub;
    if (kids.empty()) {
      sub.centers.push_back({ids[v], 0.0});
      sub.contour.push_back({-half, half});
      return sub;
    }

    std::vector<TreeSub> placed;
    placed.reserve(kids.size());
    for (std::size_t k : kids) placed.push_back(place(k));

    // Pack child subtrees left to right: each shifted until its contour clears the
    // accumulated contour by the horizontal gap at every depth both occupy.
    std::vector<double> shift(placed.size(), 0.0);
    std::vector<TreeLevelSpan> acc = placed[0].contour;
    for (std::size_t k = 1; k < placed.size(); ++k) {
      double off = -std::numeric_limits<double>::infinity();
      for (std::size_t dep = 0; dep < acc.size() && dep < placed[k].contour.size(); ++dep)
        off = std::max(off, acc[dep].right + cfg.horizontal_gap - placed[k].contour[dep].left);
      if (!std::isfinite(off)) off = acc[0].right + cfg.horizontal_gap - placed[k].contour[0].left;
      shift[k] = off;
      for (std::size_t dep = 0; dep < placed[k].contour.size(); ++dep) {
        TreeLevelSpan span{placed[k].contour[dep].left + off, placed[k].contour[dep].right + off};
        if (dep < acc.size()) {
          acc[dep].left = std::min(acc[dep].left, span.left);
          acc[dep].right = std::max(acc[dep].right, span.right);
        } else {
          acc.push_back(span);
        }
      }
    }

    double first_center = child_center(placed[0], kids[0]) + shift[0];
    double last_center = child_center(placed.back(), kids.back()) + shift.back();
    double parent_x = (first_center + last_center) / 2.0;

    sub.centers.push_back({ids[v], parent_x});
    for (std::size_t k = 0; k < placed.size(); ++k)
      for (auto& [id, x] : placed[k].centers) sub.centers.push_back({id, x + shift[k]});

    sub.contour.push_back({parent_x - half, parent_x + half});
    for (std::size_t dep = 0; dep < acc.size(); ++dep) {
      TreeLevelSpan span = acc[dep];
      if (dep + 1 < sub.contour.size()) {
        sub.contour[dep + 1].left = std::min(sub.contour[dep + 1].left, span.left);
        sub.contour[dep + 1].right = std::max(sub.contour[dep + 1].right, span.right);
      } else {
        sub.contour.push_back(span);
      }
    }
    return sub;
  }

  double child_center(const TreeSub& sub, std::size_t root_index) const {
    for (const auto& [id, x] : sub.centers)
      if (id == ids[root_index]) return x;
    throw InvariantError("tree layout lost a subtree root");
  }

  std::size_t index_of(int id) const {
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (ids[i] == id) return i;
    throw InvariantError("tree layout asked for an unknown node id");
  }
};

LayoutResult tree_layout(const Summary& s, const LayoutConfig& cfg) {
  LayoutResult l;
  if (s.nodes.empty()) return l;

  TreeLayouter tl{s, cfg, {}, {}};
  tl.ids.reserve(s.nodes.size());
  for (const auto& n : s.nodes) tl.ids.push_back(n.id);
  tl.children.resize(s.nodes.size());
  std::vector<int> in_degree(s.nodes.size(), 0);
  for (const auto& e : s.edges) {
    tl.children[tl.index_of(e.source)].push_back(e.target);
    ++in_degree[tl.index_of(e.target)];
  }
  for (auto& c : tl.children) std::sort(c.begin(), c.end());

  std::size_t root = s.nodes.size();
  for (std::size_t i = 0; i < s.nodes.size(); ++i)
    if (in_degree[i] == 0) root = i;

  std::vector<int> depth(s.nodes.size(), 0);
  std::queue<std::size_t> bfs;
  bfs.push(root);
  while (!bfs.empty()) {
    std::size_t v = bfs.front();
    bfs.pop();
    for (int cid : tl.children[v]) {
      std::size_t c = tl.index_of(cid);
      depth[c] = depth[v] + 1;
      bfs.push(c);
    }
  }

  TreeSub sub = tl.place(root);
  double min_left = std::numeric_limits<double>::infinity();
  for (const auto& [id, cx] : sub.centers) min_left = std::min(min_left, cx - cfg.node_width / 2.0);

  const double level = cfg.node_height + cfg.vertical_gap;
  for (const auto& [id, cx] : sub.centers) {
    std::size_t i = tl.index_of(id);
    l.positions[id] = {cx - cfg.node_width / 2.0 - min_left, depth[i] * level};
  }
  for (const auto& e : s.edges) {
    Point sp = l.positions[e.source];
    Point tp = l.positions[e.target];
    add_vertical_curve(l, cfg, e.source, e.target, sp.x + cfg.node_width / 2.0,
                       sp.y + cfg.node_height, tp.x + cfg.node_width / 2.0, tp.y);
  }
  finish_extents(l, cfg);
  return l;
}

// ---------------------------------------------------------------------------
// Layered DAG

struct LayerVertex {
  int node_id = -1;      // -1 for dummies
  std::size_t edge = 0;  // owning edge index for dummies
  double x = 0.0;
};

struct Layered {
  std::vector<std::vector<std::size_t>> layers;   // vertex indices per layer
  std::vector<LayerVertex> verts;
  std::vector<std::pair<std::size_t, std::size_t>> segments;  // unit-span arcs between verts
};

std::size_t count_crossings(const Layered& g, const std::vector<std::vector<std::size_t>>& order) {
  std::vector<std::size_t> pos(g.verts.size(), 0);
  for (const auto& layer : order)
    for (std::size_t i = 0; i < layer.size(); ++i) pos[layer[i]] = i;
  std::vector<std::size_t> layer_of(g.verts.size(), 0);
  for (std::size_t li = 0; li < order.size(); ++li)
    for (std::size_t v : order[li]) layer_of[v] = li;

  std::size_t total = 0;
  for (std::size_t li = 0; li + 1 < order.size(); ++li) {
    std::vector<std::pair<std::size_t, std::size_t>> arcs;
    for (const auto& [u, v] : g.segments)
      if (layer_of[u] == li) arcs.push_back({pos[u], pos[v]});
    for (std::size_t a = 0; a < arcs.size(); ++a)
      for (std::size_t b = a + 1; b < arcs.size(); ++b) {
        auto [u1, v1] = arcs[a];
        auto [u2, v2] = arcs[b];
        if ((u1 < u2 && v1 > v2) || (u1 > u2 && v1 < v2)) ++total;
      }
  }
  return total;
}

void barycenter_sweep(const Layered& g, std::vector<std::vector<std::size_t>>& order, bool down) {
  std::vector<double> pos(g.verts.size(), 0.0);
  auto refresh = [&](std::size_t li) {
    for (std::size_t i = 0; i < order[li].size(); ++i) pos[order[li][i]] = static_cast<double>(i);
  };
  for (std::size_t li = 0; li < order.size(); ++li) refresh(li);

  auto sweep_layer = [&](std::size_t li, bool use_preds) {
    std::vector<double> bary(order[li].size());
    for (std::size_t i = 0; i < order[li].size(); ++i) {
      std::size_t v = order[li][i];
      double sum = 0.0;
      int cnt = 0;
      for (const auto& [a, b] : g.segments) {
        if (use_preds && b == v) {
          sum += pos[a];
          ++cnt;
        } else if (!use_preds && a == v) {
          sum += pos[b];
          ++cnt;
        }
      }
      bary[i] = cnt > 0 ? sum / cnt : static_cast<double>(i);
    }
    std::vector<std::size_t> idx(order[li].size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return bary[a] < bary[b]; });
    std::vector<std::size_t> next;
    next.reserve(idx.size());
    for (std::size_t i : idx) next.push_back(order[li][i]);
    order[li] = std::move(next);
    refresh(li);
  };

  if (down) {
    for (std::size_t li = 1; li < order.size(); ++li) sweep_layer(li, true);
  } else {
    for (std::size_t li = order.size(); li-- > 0;) sweep_layer(li, false);
  }
}

LayoutResult dag_layout(const Summary& s, const LayoutConfig& cfg) {
  LayoutResult l;
  if (s.nodes.empty()) return l;

  std::vector<int> ids;
  for (const auto& n : s.nodes) ids.push_back(n.id);
  auto index_of = [&](int id) {
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (ids[i] == id) return i;
    throw InvariantError("dag layout asked for an unknown node id");
  };

  // Longest-path layering via Kahn; every target ends up strictly below all
  // of its predecessors, which is exactly the multi-parent placement rule.
  std::vector<std::vector<std::size_t>> adj(s.nodes.size());
  std::vector<int> in_degree(s.nodes.size(), 0);
  for (const auto& e : s.edges) {
    adj[index_of(e.source)].push_back(index_of(e.target));
    ++in_degree[index_of(e.target)];
  }
  std::vector<int> layer(s.nodes.size(), 0);
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < s.nodes.size(); ++i)
    if (in_degree[i] == 0) ready.push_back(i);
  std::vector<std::size_t> topo;
  while (!ready.empty()) {
    std::sort(ready.begin(), ready.end());  // id-order processing keeps this deterministic
    std::size_t v = ready.front();
    ready.erase(ready.begin());
    topo.push_back(v);
    for (std::size_t w : adj[v]) {
      layer[w] = std::max(layer[w], layer[v] + 1);
      if (--in_degree[w] == 0) ready.push_back(w);
    }
  }

  int max_layer = 0;
  for (int d : layer) max_layer = std::max(max_layer, d);

  Layered g;
  g.layers.resize(static_cast<std::size_t>(max_layer) + 1);
  std::vector<std::size_t> vert_of_node(s.nodes.size());
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    vert_of_node[i] = g.verts.size();
    g.verts.push_back({ids[i], 0, 0.0});
    g.layers[static_cast<std::size_t>(layer[i])].push_back(vert_of_node[i]);
  }
  // Long edges get a dummy vertex per crossed layer so ordering sees them.
  std::vector<std::vector<std::size_t>> edge_chain(s.edges.size());
  for (std::size_t ei = 0; ei < s.edges.size(); ++ei) {
    const auto& e = s.edges[ei];
    std::size_t u = vert_of_node[index_of(e.source)];
    std::size_t prev = u;
    for (int li = layer[index_of(e.source)] + 1; li < layer[index_of(e.target)]; ++li) {
      std::size_t dv = g.verts.size();
      g.verts.push_back({-1, ei, 0.0});
      g.layers[static_cast<std::size_t>(li)].push_back(dv);
      g.segments.push_back({prev, dv});
      edge_chain[ei].push_back(dv);
      prev = dv;
    }
    g.segments.push_back({prev, vert_of_node[index_of(e.target)]});
  }

  auto order = g.layers;
  auto best = order;
  std::size_t best_crossings = count_crossings(g, order);
  for (int pass = 0; pass < 4; ++pass) {
    barycenter_sweep(g, order, true);
    barycenter_sweep(g, order, false);
    std::size_t c = count_crossings(g, order);
    if (c < best_crossings) {
      best_crossings = c;
      best = order;
    }
  }

  const double pitch = cfg.node_width + cfg.horizontal_gap;
  for (const auto& lay : best)
    for (std::size_t i = 0; i < lay.size(); ++i)
      g.verts[lay[i]].x = (static_cast<double>(i) - (static_cast<double>(lay.size()) - 1.0) / 2.0) * pitch;

  double min_left = std::numeric_limits<double>::infinity();
  for (std::size_t li = 0; li < best.size(); ++li)
    for (std::size_t v : best[li])
      min_left = std::min(min_left, g.verts[v].x - (g.verts[v].node_id >= 0 ? cfg.node_width / 2.0 : 0.0));

  const double level = cfg.node_height + cfg.vertical_gap;
  std::vector<double> layer_y(best.size());
  for (std::size_t li = 0; li < best.size(); ++li) layer_y[li] = static_cast<double>(li) * level;
  std::vector<std::size_t> layer_of(g.verts.size(), 0);
  for (std::size_t li = 0; li < best.size(); ++li)
    for (std::size_t v : best[li]) layer_of[v] = li;

  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    const auto& v = g.verts[vert_of_node[i]];
    l.positions[ids[i]] = {v.x - min_left - cfg.node_width / 2.0, layer_y[layer_of[vert_of_node[i]]]};
  }

  for (std::size_t ei = 0; ei < s.edges.size(); ++ei) {
    const auto& e = s.edges[ei];
    Point sp = l.positions[e.source];
    Point tp = l.positions[e.target];
    double sx = sp.x + cfg.node_width / 2.0;
    double tx = tp.x + cfg.node_width / 2.0;
    if (edge_chain[ei].empty()) {
      add_vertical_curve(l, cfg, e.source, e.target, sx, sp.y + cfg.node_height, tx, tp.y);
    } else {
      EdgeRoute r{e.source, e.target, {}};
      r.points.push_back({sx, sp.y + cfg.node_height});
      for (std::size_t dv : edge_chain[ei])
        r.points.push_back({g.verts[dv].x - min_left, layer_y[layer_of[dv]] + cfg.node_height / 2.0});
      r.points.push_back({tx, tp.y});
      l.edge_routes.push_back(std::move(r));
    }
  }
  finish_extents(l, cfg);
  return l;
}

// ---------------------------------------------------------------------------
// Equidistant pattern columns

LayoutResult linear_set_layout(const Summary& s, const LayoutConfig& cfg) {
  LayoutResult l;
  if (s.nodes.empty() && s.patterns.empty()) return l;

  std::vector<std::size_t> order(s.patterns.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return s.patterns[a].cluster_size > s.patterns[b].cluster_size;
  });

  double max_avg = 0.0;
  for (const auto& n : s.nodes) max_avg = std::max(max_avg, n.avg_index);
  double scale = max_avg > 0.0 ? (cfg.canvas_width - cfg.node_height) / max_avg : 0.0;
  if (scale < 0.0) scale = 0.0;

  for (std::size_t col = 0; col < order.size(); ++col) {
    const auto& pat = s.patterns[order[col]];
    double x = static_cast<double>(col) * (cfg.node_width + cfg.horizontal_gap);
    double prev_y = -std::numeric_limits<double>::infinity();
    for (int nid : pat.nodes) {
      const SummaryNode* n = s.find_node(nid);
      double y = n->avg_index * scale;
      if (y < prev_y + cfg.node_height) y = prev_y + cfg.node_height;  // stack, keep pattern order
      l.positions[nid] = {x, y};
      prev_y = y;
    }
  }

  for (const auto& e : s.edges) {
    Point sp = l.positions[e.source];
    Point tp = l.positions[e.target];
    l.edge_routes.push_back({e.source, e.target,
                             {{sp.x + cfg.node_width / 2.0, sp.y + cfg.node_height},
                              {tp.x + cfg.node_width / 2.0, tp.y}}});
  }
  finish_extents(l, cfg);
  return l;
}

}  // namespace

LayoutResult layout_tree(const Summary& s, const LayoutConfig& cfg) {
  require_valid(s, SummaryKind::Tree, "layout_tree");
  return tree_layout(s, cfg);
}

LayoutResult layout_dag(const Summary& s, const LayoutConfig& cfg) {
  require_valid(s, SummaryKind::Dag, "layout_dag");
  return dag_layout(s, cfg);
}

LayoutResult layout_linear_set(const Summary& s, const LayoutConfig& cfg) {
  require_valid(s, SummaryKind::LinearSet, "layout_linear_set");
  return linear_set_layout(s, cfg);
}

LayoutResult layout_summary(const Summary& s, const LayoutConfig& cfg) {
  switch (s.kind) {
    case SummaryKind::Tree: return layout_tree(s, cfg);
    case SummaryKind::Dag: return layout_dag(s, cfg);
    case SummaryKind::LinearSet: return layout_linear_set(s, cfg);
  }
  throw StructuralError("layout_summary: unknown kind");
}

std::string layout_to_json(const LayoutResult& l) {
  nlohmann::json j;
  j["size"] = {l.width, l.height};
  j["positions"] = nlohmann::json::object();
  for (const auto& [id, p] : l.positions)
    j["positions"][std::to_string(id)] = {p.x, p.y};
  j["edges"] = nlohmann::json::array();
  for (const auto& r : l.edge_routes) {
    nlohmann::json je;
    je["source"] = r.source;
    je["target"] = r.target;
    je["points"] = nlohmann::json::array();
    for (const auto& p : r.points) je["points"].push_back({p.x, p.y});
    j["edges"].push_back(std::move(je));
  }
  return j.dump(2) + "\n";
}

}  // namespace seqsum
