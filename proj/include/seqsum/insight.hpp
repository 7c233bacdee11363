#pragma once

#include <optional>
#include <string>
#include <vector>

#include "seqsum/summary.hpp"

namespace seqsum {

// A ground-truth statement to check a summary against: an ordered list of key
// event labels plus the sequence count the statement quotes.
struct InsightQuery {
  std::vector<std::string> events;
  long expected_count = 0;
  double tolerance = 0.10;
  std::string description;

  bool operator==(const InsightQuery&) const = default;
};

struct InsightVerdict {
  bool contains_key_events = false;
  std::optional<long> matched_count;  // absent when no match exists
  bool numbers_match = false;
  std::vector<int> matched_path_nodes;  // best matching segment, walk order

  bool operator==(const InsightVerdict&) const = default;
};

struct ScoreReport {
  std::vector<InsightVerdict> verdicts;  // one per query, input order
  // Absent (not NaN) when there were no queries to aggregate.
  std::optional<double> fraction_contains;
  std::optional<double> fraction_numbers_match;

  bool operator==(const ScoreReport&) const = default;
};

// Checks whether some directed path of visible nodes (Tree/DAG) or some single
// pattern column (LinearSet) contains the query events as an in-order
// subsequence. matched_count is the bottleneck: the minimum node/edge support
// along the segment from the first to the last matched node, maximized over
// all candidate matches. numbers_match compares that bottleneck against
// expected_count within the query's relative tolerance.
InsightVerdict evaluate(const Summary& s, const InsightQuery& q);

ScoreReport score_report(const Summary& s, const std::vector<InsightQuery>& queries);

// Parses `[{"events":[...], "expectedCount":n, "tolerance":0.1, "description":"..."}]`.
// tolerance and description are optional (default 0.10 / empty). Malformed
// entries, empty event lists, tolerances outside [0,1), and absence-style
// queries are rejected with SchemaError.
std::vector<InsightQuery> insights_from_json(const std::string& text);

// Serializes per-query verdicts plus aggregate fractions as JSON.
std::string report_to_json(const ScoreReport& r, const std::vector<InsightQuery>& queries);

}  // namespace seqsum
