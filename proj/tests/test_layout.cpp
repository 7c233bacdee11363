#include <doctest.h>

#include <cmath>
#include <random>

#include "seqsum/coreflow.hpp"
#include "seqsum/errors.hpp"
#include "seqsum/layout.hpp"
#include "seqsum/sententree.hpp"
#include "seqsum/synopsis.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace seqsum;

namespace {

const LayoutConfig kCfg;  // defaults

bool boxes_overlap(const Point& a, const Point& b, const LayoutConfig& cfg) {
  return a.x < b.x + cfg.node_width && b.x < a.x + cfg.node_width &&
         a.y < b.y + cfg.node_height && b.y < a.y + cfg.node_height;
}

void check_no_visible_overlap(const Summary& s, const LayoutResult& l) {
  std::vector<int> visible;
  for (const auto& n : s.nodes)
    if (!n.hidden) visible.push_back(n.id);
  for (std::size_t i = 0; i < visible.size(); ++i)
    for (std::size_t j = i + 1; j < visible.size(); ++j)
      CHECK(!boxes_overlap(l.positions.at(visible[i]), l.positions.at(visible[j]), kCfg));
}

void check_edges_downward(const Summary& s, const LayoutResult& l) {
  for (const auto& e : s.edges) CHECK(l.positions.at(e.target).y > l.positions.at(e.source).y);
}

Summary tree_of(const std::vector<std::pair<int, int>>& edges, int n) {
  Summary s;
  s.kind = SummaryKind::Tree;
  for (int i = 0; i < n; ++i) s.nodes.push_back({i, 0, "E", 10, 0.0, false});
  for (auto [a, b] : edges) s.edges.push_back({a, b, 5});
  return s;
}

}  // namespace

TEST_SUITE("layout") {

TEST_CASE("tree: chain stacks vertically with equal x") {
  Summary s = tree_of({{0, 1}, {1, 2}}, 3);
  LayoutResult l = layout_tree(s, kCfg);
  double step = kCfg.node_height + kCfg.vertical_gap;
  CHECK(l.positions.at(0).x == doctest::Approx(l.positions.at(1).x));
  CHECK(l.positions.at(1).x == doctest::Approx(l.positions.at(2).x));
  CHECK(l.positions.at(0).y == doctest::Approx(0.0));
  CHECK(l.positions.at(1).y == doctest::Approx(step));
  CHECK(l.positions.at(2).y == doctest::Approx(2 * step));
}

TEST_CASE("tree: parent centered over two leaf children") {
  Summary s = tree_of({{0, 1}, {0, 2}}, 3);
  LayoutResult l = layout_tree(s, kCfg);
  CHECK(l.positions.at(0).x ==
        doctest::Approx((l.positions.at(1).x + l.positions.at(2).x) / 2.0));
  CHECK(l.positions.at(1).x + kCfg.node_width + kCfg.horizontal_gap <=
        l.positions.at(2).x + 1e-9);
}

TEST_CASE("tree: mined trees never overlap and flow downward") {
  std::mt19937 gen(5);
  for (int i = 0; i < 50; ++i) {
    Dataset d = testsupport::random_dataset(gen, 10, 4, 6);
    Summary s = mine_coreflow(d, MinSupport{0.2});
    LayoutResult l = layout_tree(s, kCfg);
    check_no_visible_overlap(s, l);
    check_edges_downward(s, l);
    CHECK(l.positions.size() == s.nodes.size());
  }
}

TEST_CASE("tree: rejects structurally broken input") {
  Summary two_roots = tree_of({{0, 1}}, 3);  // node 2 dangles as a second root
  CHECK_THROWS_AS(layout_tree(two_roots, kCfg), StructuralError);

  Summary wrong_kind = tree_of({{0, 1}}, 2);
  wrong_kind.kind = SummaryKind::Dag;
  CHECK_THROWS_AS(layout_tree(wrong_kind, kCfg), StructuralError);
}

TEST_CASE("dag: diamond puts the join strictly below both branches") {
  Summary s;
  s.kind = SummaryKind::Dag;
  for (int i = 0; i < 4; ++i) s.nodes.push_back({i, i, std::string(1, char('A' + i)), 10, 0.0, false});
  s.edges = {{0, 1, 5}, {0, 2, 5}, {1, 3, 5}, {2, 3, 5}};
  LayoutResult l = layout_dag(s, kCfg);
  CHECK(l.positions.at(3).y > l.positions.at(1).y);
  CHECK(l.positions.at(3).y > l.positions.at(2).y);
  CHECK(l.positions.at(1).y == doctest::Approx(l.positions.at(2).y));
}

TEST_CASE("dag: linear chain occupies a single column") {
  Summary s;
  s.kind = SummaryKind::Dag;
  for (int i = 0; i < 4; ++i) s.nodes.push_back({i, 0, "E", 10, 0.0, false});
  s.edges = {{0, 1, 5}, {1, 2, 5}, {2, 3, 5}};
  LayoutResult l = layout_dag(s, kCfg);
  for (int i = 1; i < 4; ++i) CHECK(l.positions.at(i).x == doctest::Approx(l.positions.at(0).x));
}

TEST_CASE("dag: cycles rejected") {
  Summary s;
  s.kind = SummaryKind::Dag;
  s.nodes = {{0, 0, "A", 5, 0.0, false}, {1, 1, "B", 5, 0.0, false}};
  s.edges = {{0, 1, 2}, {1, 0, 2}};
  CHECK_THROWS_AS(layout_dag(s, kCfg), StructuralError);
}

TEST_CASE("dag: barycenter never ends worse than the initial ordering") {
  std::mt19937 gen(9);
  for (int i = 0; i < 80; ++i) {
    Summary s = testsupport::random_dag_summary(gen);
    LayoutResult l = layout_dag(s, kCfg);
    CHECK(testsupport::layout_crossings(l) <= testsupport::initial_order_crossings(s));
    check_no_visible_overlap(s, l);
    check_edges_downward(s, l);
  }
}

TEST_CASE("dag: predecessor rule holds on mined graphs") {
  std::mt19937 gen(21);
  for (int i = 0; i < 50; ++i) {
    Dataset d = testsupport::random_dataset(gen, 10, 4, 6);
    Summary s = mine_sententree(d, MinSupport{0.25});
    LayoutResult l = layout_dag(s, kCfg);
    check_no_visible_overlap(s, l);
    for (const auto& e : s.edges)
      CHECK(l.positions.at(e.target).y > l.positions.at(e.source).y);
  }
}

TEST_CASE("linear set: avg index orders one column top to bottom") {
  Summary s;
  s.kind = SummaryKind::LinearSet;
  s.nodes = {{0, 0, "A", 3, 0.0, false}, {1, 1, "B", 3, 1.0, false}};
  s.patterns = {{{0, 1}, 3}};
  s.edges = {{0, 1, 3}};
  LayoutResult l = layout_linear_set(s, kCfg);
  CHECK(l.positions.at(1).y > l.positions.at(0).y);
  CHECK(l.positions.at(0).x == doctest::Approx(l.positions.at(1).x));
}

TEST_CASE("linear set: three singleton patterns sit in equidistant columns") {
  Summary s;
  s.kind = SummaryKind::LinearSet;
  s.nodes = {{0, 0, "A", 3, 0.0, false}, {1, 1, "B", 2, 0.0, false}, {2, 2, "C", 1, 0.0, false}};
  s.patterns = {{{0}, 3}, {{1}, 2}, {{2}, 1}};
  LayoutResult l = layout_linear_set(s, kCfg);
  double pitch = kCfg.node_width + kCfg.horizontal_gap;
  CHECK(l.positions.at(0).x == doctest::Approx(0.0));
  CHECK(l.positions.at(1).x == doctest::Approx(pitch));
  CHECK(l.positions.at(2).x == doctest::Approx(2 * pitch));
}

TEST_CASE("linear set: columns ordered by cluster size, ties keep pattern order") {
  Summary s;
  s.kind = SummaryKind::LinearSet;
  s.nodes = {{0, 0, "A", 2, 0.0, false}, {1, 1, "B", 5, 0.0, false}, {2, 2, "C", 2, 0.0, false}};
  s.patterns = {{{0}, 2}, {{1}, 5}, {{2}, 2}};
  LayoutResult l = layout_linear_set(s, kCfg);
  double pitch = kCfg.node_width + kCfg.horizontal_gap;
  CHECK(l.positions.at(1).x == doctest::Approx(0.0));      // biggest cluster first
  CHECK(l.positions.at(0).x == doctest::Approx(pitch));    // then stable pattern order
  CHECK(l.positions.at(2).x == doctest::Approx(2 * pitch));
}

TEST_CASE("linear set: stacking preserves pattern order under avg-index ties") {
  std::mt19937 gen(33);
  for (int i = 0; i < 50; ++i) {
    Dataset d = testsupport::random_dataset(gen, 8, 4, 6);
    Summary s = mine_synopsis(d, SynopsisParams::for_dataset(0.4, d));
    LayoutResult l = layout_linear_set(s, kCfg);
    for (const auto& p : s.patterns) {
      for (std::size_t k = 1; k < p.nodes.size(); ++k) {
        CHECK(l.positions.at(p.nodes[k]).y >=
              l.positions.at(p.nodes[k - 1]).y + kCfg.node_height - 1e-9);
      }
    }
    check_no_visible_overlap(s, l);
  }
}

TEST_CASE("dispatch and json serialization") {
  Summary s = tree_of({{0, 1}}, 2);
  LayoutResult l = layout_summary(s, kCfg);
  CHECK(l == layout_tree(s, kCfg));

  std::string j = layout_to_json(l);
  CHECK(j.find("\"positions\"") != std::string::npos);
  CHECK(j.find("\"edges\"") != std::string::npos);
  CHECK(layout_to_json(l) == j);  // deterministic

  // Coordinates stay inside the declared size.
  for (const auto& [id, p] : l.positions) {
    CHECK(p.x >= -1e-9);
    CHECK(p.y >= -1e-9);
    CHECK(p.x + kCfg.node_width <= l.width + 1e-9);
    CHECK(p.y + kCfg.node_height <= l.height + 1e-9);
  }
}

}  // TEST_SUITE
