#include <doctest.h>

#include <random>

#include "seqsum/errors.hpp"
#include "seqsum/insight.hpp"
#include "seqsum/synopsis.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace seqsum;

namespace {

Summary two_path_dag() {
  // 0:Start fans out to 1:Fast(9) and 2:Slow(5); both reach 3:End.
  Summary s;
  s.kind = SummaryKind::Dag;
  s.nodes = {{0, 0, "Start", 14, 0.0, false},
             {1, 1, "Fast", 9, 1.0, false},
             {2, 2, "Slow", 5, 1.0, false},
             {3, 3, "End", 14, 2.0, false}};
  s.edges = {{0, 1, 9}, {0, 2, 5}, {1, 3, 9}, {2, 3, 5}};
  return s;
}

}  // namespace

TEST_SUITE("insight") {

TEST_CASE("emergency fixture: discharge count matches the query") {
  Summary s = testsupport::emergency_summary();
  InsightQuery q{{"Emergency", "Discharge-Alive"}, 37, 0.10, "survival rate"};
  InsightVerdict v = evaluate(s, q);
  CHECK(v.contains_key_events);
  REQUIRE(v.matched_count.has_value());
  CHECK(*v.matched_count == 37);
  CHECK(v.numbers_match);
  CHECK(v.matched_path_nodes.size() == 2);
}

TEST_CASE("missing event means no match and no count") {
  Summary s = testsupport::emergency_summary();
  InsightQuery q{{"Emergency", "Teleport"}, 5, 0.10, ""};
  InsightVerdict v = evaluate(s, q);
  CHECK_FALSE(v.contains_key_events);
  CHECK_FALSE(v.matched_count.has_value());
  CHECK_FALSE(v.numbers_match);
  CHECK(v.matched_path_nodes.empty());
}

TEST_CASE("two disjoint matching paths: the stronger one wins") {
  Summary s = two_path_dag();
  InsightVerdict v = evaluate(s, InsightQuery{{"Start", "End"}, 9, 0.10, ""});
  REQUIRE(v.matched_count.has_value());
  CHECK(*v.matched_count == 9);
  CHECK(v.numbers_match);

  // Querying an intermediate stop picks the matching branch's bottleneck.
  InsightVerdict slow = evaluate(s, InsightQuery{{"Start", "Slow", "End"}, 5, 0.0, ""});
  REQUIRE(slow.matched_count.has_value());
  CHECK(*slow.matched_count == 5);
  CHECK(slow.numbers_match);
}

TEST_CASE("ordering matters: reversed query fails on a forward chain") {
  Summary s = testsupport::emergency_summary();
  InsightVerdict v = evaluate(s, InsightQuery{{"Discharge-Alive", "Emergency"}, 37, 0.1, ""});
  CHECK_FALSE(v.contains_key_events);
}

TEST_CASE("dag evaluation agrees with exhaustive path search") {
  std::mt19937 gen(404);
  for (int round = 0; round < 150; ++round) {
    Summary s = testsupport::random_dag_summary(gen);
    std::vector<std::string> queries[] = {
        {s.nodes.front().label},
        {s.nodes.front().label, s.nodes.back().label},
        {"A", "B"},
        {"C", "A", "B"},
    };
    for (const auto& q : queries) {
      InsightVerdict got = evaluate(s, InsightQuery{q, 1, 0.5, ""});
      auto want = testsupport::brute_force_best_bottleneck(s, q);
      CHECK(got.contains_key_events == want.has_value());
      if (want.has_value()) {
        REQUIRE(got.matched_count.has_value());
        CHECK(*got.matched_count == *want);
      }
    }
  }
}

TEST_CASE("linear set summaries evaluate per pattern") {
  std::mt19937 gen(405);
  for (int round = 0; round < 60; ++round) {
    Dataset d = testsupport::random_dataset(gen, 8, 4, 6);
    Summary s = mine_synopsis(d, SynopsisParams::for_dataset(0.5, d));
    std::vector<std::string> q;
    for (std::size_t k = 0; k < 2 && k < d.alphabet.size(); ++k)
      q.push_back(d.alphabet[k].label);
    InsightVerdict got = evaluate(s, InsightQuery{q, 1, 0.9, ""});
    auto want = testsupport::brute_force_best_bottleneck(s, q);
    CHECK(got.contains_key_events == want.has_value());
    if (want.has_value()) CHECK(*got.matched_count == *want);
  }
}

TEST_CASE("adding structure never erases an existing match") {
  Summary s = two_path_dag();
  InsightQuery q{{"Start", "End"}, 9, 0.1, ""};
  REQUIRE(evaluate(s, q).contains_key_events);

  Summary grown = s;
  grown.nodes.push_back({4, 4, "Extra", 3, 1.5, false});
  grown.edges.push_back({0, 4, 3});
  CHECK(evaluate(grown, q).contains_key_events);
  REQUIRE(evaluate(grown, q).matched_count.has_value());
  CHECK(*evaluate(grown, q).matched_count == 9);
}

TEST_CASE("tolerance bounds the accepted deviation") {
  Summary s = testsupport::emergency_summary();
  CHECK(evaluate(s, {{"Discharge-Alive"}, 40, 0.10, ""}).numbers_match);   // |37-40| <= 4
  CHECK_FALSE(evaluate(s, {{"Discharge-Alive"}, 42, 0.10, ""}).numbers_match);
  CHECK(evaluate(s, {{"Discharge-Alive"}, 37, 0.0, ""}).numbers_match);    // exact only
  CHECK_FALSE(evaluate(s, {{"Discharge-Alive"}, 36, 0.0, ""}).numbers_match);
}

TEST_CASE("score report aggregates fractions") {
  Summary s = testsupport::emergency_summary();
  std::vector<InsightQuery> qs = {
      {{"Emergency"}, 100, 0.05, "volume"},
      {{"Emergency", "Discharge-Alive"}, 37, 0.10, "survivors"},
      {{"Emergency", "Discharge-Alive"}, 80, 0.10, "wrong count"},
      {{"Teleport"}, 1, 0.10, "absent event"},
  };
  ScoreReport r = score_report(s, qs);
  REQUIRE(r.verdicts.size() == 4);
  REQUIRE(r.fraction_contains.has_value());
  REQUIRE(r.fraction_numbers_match.has_value());
  CHECK(*r.fraction_contains == doctest::Approx(0.75));
  CHECK(*r.fraction_numbers_match == doctest::Approx(0.5));

  ScoreReport empty = score_report(s, {});
  CHECK(empty.verdicts.empty());
  CHECK_FALSE(empty.fraction_contains.has_value());
  CHECK_FALSE(empty.fraction_numbers_match.has_value());

  std::string json = report_to_json(r, qs);
  CHECK(json.find("\"containsKeyEvents\": true") != std::string::npos);
  CHECK(json.find("\"aggregate\"") != std::string::npos);
  CHECK(json.find("survival") == std::string::npos);  // descriptions come from qs
  CHECK(json.find("survivors") != std::string::npos);
}

TEST_CASE("query files are validated on load") {
  auto load = [](const std::string& text) { return insights_from_json(text); };

  auto qs = load(R"([{"events": ["A", "B"], "expectedCount": 5}])");
  REQUIRE(qs.size() == 1);
  CHECK(qs[0].tolerance == doctest::Approx(0.10));
  CHECK(qs[0].description.empty());

  CHECK_THROWS_AS(load("not json"), ParseError);
  CHECK_THROWS_AS(load(R"({"events": []})"), SchemaError);           // not an array
  CHECK_THROWS_AS(load(R"([{"expectedCount": 5}])"), SchemaError);   // events missing
  CHECK_THROWS_AS(load(R"([{"events": []}])"), SchemaError);         // events empty
  CHECK_THROWS_AS(load(R"([{"events": ["A"], "tolerance": 1.0}])"), SchemaError);
  CHECK_THROWS_AS(load(R"([{"events": ["A"], "tolerance": -0.1}])"), SchemaError);
  CHECK_THROWS_AS(load(R"([{"events": ["A"], "expectedCount": -2}])"), SchemaError);

  // Absence conditions are out of scope and must be called out, not ignored.
  try {
    load(R"([{"events": ["A"], "mustNotContain": ["B"]}])");
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("absence") != std::string::npos);
  }
}

}  // TEST_SUITE
