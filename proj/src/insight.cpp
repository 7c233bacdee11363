#include "seqsum/insight.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include <json.hpp>

#include "seqsum/errors.hpp"

namespace seqsum {
namespace {

constexpr long kUnset = std::numeric_limits<long>::min();

struct Fragment {
  std::vector<const SummaryNode*> nodes;
  std::vector<const SummaryEdge*> edges;
};

struct Match {
  long bottleneck = 0;
  std::vector<int> path;  // node ids, walk order
};

// Best in-order subsequence match of `q` over directed paths of the fragment.
// Dynamic program over (node, number of query events matched); the value is
// the minimum node/edge support seen since the first matched node. Nodes may
// be passed through without matching, so the segment can include connectors.
std::optional<Match> best_match(const Fragment& frag, const std::vector<std::string>& q) {
  if (q.empty() || frag.nodes.empty()) return std::nullopt;
  const std::size_t n = frag.nodes.size();
  const std::size_t m = q.size();

  std::map<int, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[frag.nodes[i]->id] = i;

  std::vector<std::vector<std::size_t>> incoming(n);  // edge indices by target
  std::vector<int> in_degree(n, 0);
  std::vector<std::vector<std::size_t>> succ(n);
  for (std::size_t ei = 0; ei < frag.edges.size(); ++ei) {
    std::size_t u = index.at(frag.edges[ei]->source);
    std::size_t v = index.at(frag.edges[ei]->target);
    incoming[v].push_back(ei);
    succ[u].push_back(v);
    ++in_degree[v];
  }

  std::vector<std::size_t> ready, topo;
  for (std::size_t i = 0; i < n; ++i)
    if (in_degree[i] == 0) ready.push_back(i);
  while (!ready.empty()) {
    std::sort(ready.begin(), ready.end(),
              [&](std::size_t a, std::size_t b) { return frag.nodes[a]->id < frag.nodes[b]->id; });
    std::size_t v = ready.front();
    ready.erase(ready.begin());
    topo.push_back(v);
    for (std::size_t w : succ[v])
      if (--in_degree[w] == 0) ready.push_back(w);
  }
  if (topo.size() != n) throw InvariantError("insight evaluation given a cyclic summary");

  // val[v][j]: best bottleneck with j query events matched, segment ending at v.
  std::vector<std::vector<long>> val(n, std::vector<long>(m + 1, kUnset));
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> from(
      n, std::vector<std::pair<std::size_t, std::size_t>>(m + 1, {n, 0}));

  for (std::size_t v : topo) {
    if (frag.nodes[v]->label == q[0] && frag.nodes[v]->support > val[v][1]) {
      val[v][1] = frag.nodes[v]->support;
      from[v][1] = {n, 0};  // segment starts here
    }
    for (std::size_t ei : incoming[v]) {
      std::size_t u = index.at(frag.edges[ei]->source);
      for (std::size_t j = 1; j <= m; ++j) {
        if (val[u][j] == kUnset) continue;
        long base = std::min({val[u][j], frag.edges[ei]->support, frag.nodes[v]->support});
        if (base > val[v][j]) {  // pass through without matching
          val[v][j] = base;
          from[v][j] = {u, j};
        }
        if (j < m && frag.nodes[v]->label == q[j] && base > val[v][j + 1]) {
          val[v][j + 1] = base;
          from[v][j + 1] = {u, j};
        }
      }
    }
  }

  long best = kUnset;
  std::size_t best_v = n;
  for (std::size_t v : topo)
    if (val[v][m] > best) {
      best = val[v][m];
      best_v = v;
    }
  if (best == kUnset) return std::nullopt;

  Match out;
  out.bottleneck = best;
  std::size_t v = best_v, j = m;
  for (;;) {
    out.path.push_back(frag.nodes[v]->id);
    auto [pu, pj] = from[v][j];
    if (pu == n) break;
    v = pu;
    j = pj;
  }
  std::reverse(out.path.begin(), out.path.end());
  return out;
}

Fragment visible_fragment(const Summary& s) {
  Fragment f;
  std::map<int, const SummaryNode*> by_id;
  for (const auto& n : s.nodes) {
    by_id[n.id] = &n;
    if (!n.hidden) f.nodes.push_back(&n);
  }
  for (const auto& e : s.edges) {
    const SummaryNode* a = by_id.at(e.source);
    const SummaryNode* b = by_id.at(e.target);
    if (!a->hidden && !b->hidden) f.edges.push_back(&e);
  }
  return f;
}

}  // namespace

InsightVerdict evaluate(const Summary& s, const InsightQuery& q) {
  InsightVerdict v;
  std::optional<Match> best;

  if (s.kind == SummaryKind::LinearSet) {
    // Patterns are disjoint clusters; a match must stay inside one column.
    for (const auto& pat : s.patterns) {
      Fragment f;
      std::map<int, bool> in_pattern;
      for (int id : pat.nodes) {
        const SummaryNode* n = s.find_node(id);
        if (n != nullptr && !n->hidden) {
          f.nodes.push_back(n);
          in_pattern[id] = true;
        }
      }
      for (const auto& e : s.edges)
        if (in_pattern.count(e.source) && in_pattern.count(e.target)) f.edges.push_back(&e);
      auto m = best_match(f, q.events);
      if (m && (!best || m->bottleneck > best->bottleneck)) best = m;
    }
  } else {
    best = best_match(visible_fragment(s), q.events);
  }

  if (best) {
    v.contains_key_events = true;
    v.matched_count = best->bottleneck;
    v.matched_path_nodes = best->path;
    double diff = std::abs(static_cast<double>(best->bottleneck) -
                           static_cast<double>(q.expected_count));
    v.numbers_match = diff <= q.tolerance * static_cast<double>(q.expected_count);
  }
  return v;
}

ScoreReport score_report(const Summary& s, const std::vector<InsightQuery>& queries) {
  ScoreReport r;
  long contains = 0, numbers = 0;
  for (const auto& q : queries) {
    r.verdicts.push_back(evaluate(s, q));
    if (r.verdicts.back().contains_key_events) ++contains;
    if (r.verdicts.back().numbers_match) ++numbers;
  }
  if (!queries.empty()) {
    r.fraction_contains = static_cast<double>(contains) / static_cast<double>(queries.size());
    r.fraction_numbers_match = static_cast<double>(numbers) / static_cast<double>(queries.size());
  }
  return r;
}

std::vector<InsightQuery> insights_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), 0);
  }
  if (!j.is_array()) throw SchemaError("insights file must be a JSON array");

  std::vector<InsightQuery> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& e = j[i];
    std::string at = "insight " + std::to_string(i) + ": ";
    if (!e.is_object()) throw SchemaError(at + "expected an object");
    for (const char* k : {"absent", "absence", "mustNotContain"})
      if (e.contains(k))
        throw SchemaError(at + "absence queries are not supported");
    if (!e.contains("events") || !e["events"].is_array() || e["events"].empty())
      throw SchemaError(at + "\"events\" must be a non-empty array of labels");
    if (!e.contains("expectedCount") || !e["expectedCount"].is_number_integer())
      throw SchemaError(at + "\"expectedCount\" must be an integer");

    InsightQuery q;
    for (const auto& ev : e["events"]) {
      if (!ev.is_string()) throw SchemaError(at + "\"events\" entries must be strings");
      q.events.push_back(ev.get<std::string>());
    }
    q.expected_count = e["expectedCount"].get<long>();
    if (q.expected_count < 0) throw SchemaError(at + "\"expectedCount\" must be nonnegative");
    if (e.contains("tolerance")) {
      if (!e["tolerance"].is_number()) throw SchemaError(at + "\"tolerance\" must be a number");
      q.tolerance = e["tolerance"].get<double>();
      if (q.tolerance < 0.0 || q.tolerance >= 1.0)
        throw SchemaError(at + "\"tolerance\" must lie in [0,1)");
    }
    if (e.contains("description")) {
      if (!e["description"].is_string()) throw SchemaError(at + "\"description\" must be a string");
      q.description = e["description"].get<std::string>();
    }
    out.push_back(std::move(q));
  }
  return out;
}

std::string report_to_json(const ScoreReport& r, const std::vector<InsightQuery>& queries) {
  nlohmann::json j;
  j["queries"] = nlohmann::json::array();
  for (std::size_t i = 0; i < r.verdicts.size(); ++i) {
    const InsightVerdict& v = r.verdicts[i];
    nlohmann::json q;
    if (i < queries.size()) {
      q["description"] = queries[i].description;
      q["events"] = queries[i].events;
      q["expectedCount"] = queries[i].expected_count;
    }
    q["containsKeyEvents"] = v.contains_key_events;
    q["matchedCount"] = v.matched_count ? nlohmann::json(*v.matched_count) : nlohmann::json(nullptr);
    q["numbersMatch"] = v.numbers_match;
    q["matchedPathNodes"] = v.matched_path_nodes;
    j["queries"].push_back(std::move(q));
  }
  if (r.fraction_contains) {
    j["aggregate"] = {{"containsKeyEvents", *r.fraction_contains},
                      {"numbersMatch", *r.fraction_numbers_match}};
  } else {
    j["aggregate"] = nullptr;
  }
  return j.dump(2) + "\n";
}

}  // namespace seqsum
