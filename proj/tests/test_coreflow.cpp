#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <tuple>

#include "seqsum/coreflow.hpp"
#include "seqsum/errors.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace seqsum;

TEST_SUITE("coreflow") {

TEST_CASE("absolute threshold is a global ceiling") {
  CHECK(MinSupport{0.5}.absolute_threshold(3) == 2);
  CHECK(MinSupport{0.3}.absolute_threshold(3) == 1);
  CHECK(MinSupport{1.0}.absolute_threshold(7) == 7);
  CHECK(MinSupport{0.05}.absolute_threshold(3) == 1);  // never below 1
  CHECK_THROWS_AS(MinSupport{0.0}.absolute_threshold(3), std::invalid_argument);
  CHECK_THROWS_AS(MinSupport{1.5}.absolute_threshold(3), std::invalid_argument);
}

TEST_CASE("worked example: Root->A(3)->B(2), C and D pruned") {
  Summary s = mine_coreflow(testsupport::worked_dataset(), MinSupport{0.5});
  REQUIRE(s.kind == SummaryKind::Tree);
  REQUIRE(s.nodes.size() == 3);  // hidden root + A + B
  CHECK(s.nodes[0].hidden);
  CHECK(s.nodes[0].support == 3);

  const SummaryNode* a = s.find_node(1);
  const SummaryNode* b = s.find_node(2);
  REQUIRE(a != nullptr);
  REQUIRE(b != nullptr);
  CHECK(a->label == "A");
  CHECK(a->support == 3);
  CHECK(a->avg_index == doctest::Approx(0.0));
  CHECK(b->label == "B");
  CHECK(b->support == 2);
  CHECK(b->avg_index == doctest::Approx(1.0));  // original positions, not trimmed ones
  REQUIRE(s.edges.size() == 2);
  CHECK(s.edges[0] == SummaryEdge{0, 1, 3});
  CHECK(s.edges[1] == SummaryEdge{1, 2, 2});
  CHECK(validate(s).empty());
}

TEST_CASE("single sequence mines to a full chain at ms=1.0") {
  Summary s = mine_coreflow(testsupport::single_ab_dataset(), MinSupport{1.0});
  REQUIRE(s.nodes.size() == 3);
  CHECK(s.nodes[1].label == "A");
  CHECK(s.nodes[1].support == 1);
  CHECK(s.nodes[2].label == "B");
  CHECK(s.nodes[2].support == 1);
  CHECK(s.edges == std::vector<SummaryEdge>{{0, 1, 1}, {1, 2, 1}});
}

TEST_CASE("empty dataset is rejected") {
  Dataset d;
  d.name = "empty";
  CHECK_THROWS_AS(mine_coreflow(d, MinSupport{0.5}), EmptyDatasetError);
}

TEST_CASE("matches the straightforward recursive reference on random inputs") {
  std::mt19937 gen(101);
  for (int i = 0; i < 400; ++i) {
    Dataset d = testsupport::random_dataset(gen, 4, 3, 3);
    double fraction = 0.2 + 0.2 * static_cast<double>(gen() % 5);  // 0.2 .. 1.0
    Summary mine = mine_coreflow(d, MinSupport{fraction});
    Summary ref = testsupport::reference_coreflow(d, fraction);
    CHECK(testsupport::tree_fingerprint(mine) == testsupport::tree_fingerprint(ref));
  }
}

TEST_CASE("every node meets the threshold; siblings partition the parent") {
  std::mt19937 gen(55);
  for (int i = 0; i < 100; ++i) {
    Dataset d = testsupport::random_dataset(gen, 8, 4, 6);
    MinSupport ms{0.25};
    long threshold = ms.absolute_threshold(static_cast<long>(d.sequences.size()));
    Summary s = mine_coreflow(d, ms);
    CHECK(validate(s).empty());

    std::map<int, long> child_sum;
    for (const auto& e : s.edges) child_sum[e.source] += e.support;
    for (const auto& n : s.nodes) {
      if (!n.hidden) CHECK(n.support >= threshold);
      if (child_sum.count(n.id)) CHECK(child_sum[n.id] <= n.support);
    }
  }
}

TEST_CASE("node multisets shrink as min support grows") {
  std::mt19937 gen(77);
  const std::vector<double> grid = {0.05, 0.10, 0.15, 0.20, 0.25, 0.30};
  auto key_multiset = [](const Summary& s) {
    std::multiset<std::tuple<int, long, double>> keys;
    for (const auto& n : s.nodes)
      if (!n.hidden) keys.insert({n.event, n.support, n.avg_index});
    return keys;
  };
  for (int i = 0; i < 40; ++i) {
    Dataset d = testsupport::random_dataset(gen, 10, 4, 6);
    for (std::size_t g = 0; g + 1 < grid.size(); ++g) {
      auto fine = key_multiset(mine_coreflow(d, MinSupport{grid[g]}));
      auto coarse = key_multiset(mine_coreflow(d, MinSupport{grid[g + 1]}));
      CHECK(std::includes(fine.begin(), fine.end(), coarse.begin(), coarse.end()));
    }
  }
}

TEST_CASE("repeated events can appear along one path") {
  Dataset d;
  d.name = "repeat";
  d.alphabet = {{0, "A"}, {1, "B"}};
  d.sequences = {{"s1", {0, 1, 0}}, {"s2", {0, 1, 0}}};
  Summary s = mine_coreflow(d, MinSupport{1.0});
  // A(2) -> B(2) -> A(2): the second A is mined after trimming the first.
  REQUIRE(s.nodes.size() == 4);
  CHECK(s.nodes[1].event == 0);
  CHECK(s.nodes[2].event == 1);
  CHECK(s.nodes[3].event == 0);
  CHECK(s.nodes[3].avg_index == doctest::Approx(2.0));
}

}  // TEST_SUITE
