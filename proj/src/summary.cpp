#include "seqsum/summary.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include <json.hpp>

#include "seqsum/errors.hpp"

namespace seqsum {
namespace {

using json = nlohmann::json;

std::string node_ref(int id) { return "node " + std::to_string(id); }

// Kahn's algorithm; returns false when a directed cycle remains.
bool is_acyclic(std::size_t n, const std::vector<std::vector<std::size_t>>& adj,
                std::vector<std::size_t> in_degree) {
  std::queue<std::size_t> ready;
  for (std::size_t v = 0; v < n; ++v)
    if (in_degree[v] == 0) ready.push(v);
  std::size_t seen = 0;
  while (!ready.empty()) {
    std::size_t v = ready.front();
    ready.pop();
    ++seen;
    for (std::size_t w : adj[v])
      if (--in_degree[w] == 0) ready.push(w);
  }
  return seen == n;
}

}  // namespace

const SummaryNode* Summary::find_node(int id) const {
  for (const auto& n : nodes)
    if (n.id == id) return &n;
  return nullptr;
}

const char* to_string(SummaryKind kind) {
  switch (kind) {
    case SummaryKind::LinearSet: return "LinearSet";
    case SummaryKind::Tree: return "Tree";
    case SummaryKind::Dag: return "DAG";
  }
  return "?";
}

std::vector<std::string> validate(const Summary& s) {
  std::vector<std::string> bad;

  std::map<int, std::size_t> index;
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    const auto& n = s.nodes[i];
    if (index.count(n.id)) bad.push_back("duplicate node id " + std::to_string(n.id));
    index[n.id] = i;
    if (n.support < 1) bad.push_back(node_ref(n.id) + " has support < 1");
    if (n.avg_index < 0.0) bad.push_back(node_ref(n.id) + " has negative avgIndex");
  }

  std::vector<std::vector<std::size_t>> adj(s.nodes.size());
  std::vector<std::size_t> in_degree(s.nodes.size(), 0);
  for (const auto& e : s.edges) {
    auto si = index.find(e.source);
    auto ti = index.find(e.target);
    if (si == index.end() || ti == index.end()) {
      bad.push_back("edge " + std::to_string(e.source) + "->" + std::to_string(e.target) +
                    " references a missing node");
      continue;
    }
    if (e.source == e.target) {
      bad.push_back("self-loop on " + node_ref(e.source));
      continue;
    }
    adj[si->second].push_back(ti->second);
    ++in_degree[ti->second];
    if (s.kind != SummaryKind::LinearSet) {
      long cap = std::min(s.nodes[si->second].support, s.nodes[ti->second].support);
      if (e.support > cap)
        bad.push_back("edge " + std::to_string(e.source) + "->" + std::to_string(e.target) +
                      " support exceeds an endpoint");
    }
  }

  if (s.kind == SummaryKind::Tree) {
    std::size_t roots = 0;
    for (std::size_t v = 0; v < s.nodes.size(); ++v) {
      if (in_degree[v] == 0) ++roots;
      if (in_degree[v] > 1)
        bad.push_back(node_ref(s.nodes[v].id) + " has " + std::to_string(in_degree[v]) + " parents");
    }
    if (!s.nodes.empty() && roots != 1)
      bad.push_back("tree has " + std::to_string(roots) + " roots");
    if (!is_acyclic(s.nodes.size(), adj, in_degree)) bad.push_back("cycle");
    // Children split a subset of the parent's sequences between them.
    for (std::size_t v = 0; v < s.nodes.size(); ++v) {
      long child_sum = 0;
      for (const auto& e : s.edges)
        if (index.count(e.source) && index.at(e.source) == v) child_sum += e.support;
      if (child_sum > s.nodes[v].support)
        bad.push_back(node_ref(s.nodes[v].id) + " child edge supports exceed its own");
    }
  } else if (s.kind == SummaryKind::Dag) {
    if (!is_acyclic(s.nodes.size(), adj, in_degree)) bad.push_back("cycle");
  } else {
    std::map<int, int> covered;  // node id -> number of patterns holding it
    for (const auto& p : s.patterns) {
      if (p.cluster_size < 1) bad.push_back("pattern with clusterSize < 1");
      for (int id : p.nodes) {
        if (!index.count(id))
          bad.push_back("pattern references missing " + node_ref(id));
        else
          ++covered[id];
      }
    }
    for (const auto& n : s.nodes) {
      int c = covered.count(n.id) ? covered[n.id] : 0;
      if (c != 1)
        bad.push_back(node_ref(n.id) + " appears in " + std::to_string(c) + " patterns");
    }
    std::set<std::pair<int, int>> adjacent;
    for (const auto& p : s.patterns)
      for (std::size_t i = 0; i + 1 < p.nodes.size(); ++i)
        adjacent.insert({p.nodes[i], p.nodes[i + 1]});
    for (const auto& e : s.edges)
      if (!adjacent.count({e.source, e.target}))
        bad.push_back("edge " + std::to_string(e.source) + "->" + std::to_string(e.target) +
                      " is not a consecutive pattern adjacency");
  }

  return bad;
}

std::string summary_to_json(const Summary& s) {
  json j;
  j["kind"] = to_string(s.kind);
  j["meta"] = {{"technique", s.meta.technique},
               {"granularity", s.meta.granularity},
               {"dataset", s.meta.dataset}};

  auto nodes = s.nodes;
  std::sort(nodes.begin(), nodes.end(),
            [](const SummaryNode& a, const SummaryNode& b) { return a.id < b.id; });
  j["nodes"] = json::array();
  for (const auto& n : nodes)
    j["nodes"].push_back({{"id", n.id},
                          {"event", n.event},
                          {"label", n.label},
                          {"support", n.support},
                          {"avgIndex", n.avg_index},
                          {"hidden", n.hidden}});

  auto edges = s.edges;
  std::sort(edges.begin(), edges.end(), [](const SummaryEdge& a, const SummaryEdge& b) {
    return std::pair(a.source, a.target) < std::pair(b.source, b.target);
  });
  j["edges"] = json::array();
  for (const auto& e : edges)
    j["edges"].push_back({{"source", e.source}, {"target", e.target}, {"support", e.support}});

  j["patterns"] = json::array();
  for (const auto& p : s.patterns)
    j["patterns"].push_back({{"nodes", p.nodes}, {"clusterSize", p.cluster_size}});

  return j.dump(2) + "\n";
}

Summary summary_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), 0);
  }
  auto need = [&](const json& obj, const char* key) -> const json& {
    if (!obj.is_object() || !obj.contains(key))
      throw SchemaError(std::string("summary JSON is missing \"") + key + "\"");
    return obj[key];
  };

  Summary s;
  std::string kind = need(j, "kind").get<std::string>();
  if (kind == "LinearSet")
    s.kind = SummaryKind::LinearSet;
  else if (kind == "Tree")
    s.kind = SummaryKind::Tree;
  else if (kind == "DAG")
    s.kind = SummaryKind::Dag;
  else
    throw SchemaError("unknown summary kind \"" + kind + "\"");

  const json& meta = need(j, "meta");
  s.meta.technique = need(meta, "technique").get<std::string>();
  s.meta.granularity = need(meta, "granularity").get<double>();
  s.meta.dataset = need(meta, "dataset").get<std::string>();

  for (const auto& jn : need(j, "nodes")) {
    SummaryNode n;
    n.id = need(jn, "id").get<int>();
    n.event = need(jn, "event").get<int>();
    n.label = jn.contains("label") ? jn["label"].get<std::string>() : std::string{};
    n.support = need(jn, "support").get<long>();
    n.avg_index = need(jn, "avgIndex").get<double>();
    n.hidden = need(jn, "hidden").get<bool>();
    s.nodes.push_back(std::move(n));
  }
  for (const auto& je : need(j, "edges")) {
    SummaryEdge e;
    e.source = need(je, "source").get<int>();
    e.target = need(je, "target").get<int>();
    e.support = need(je, "support").get<long>();
    s.edges.push_back(e);
  }
  for (const auto& jp : need(j, "patterns")) {
    SummaryPattern p;
    p.nodes = need(jp, "nodes").get<std::vector<int>>();
    p.cluster_size = need(jp, "clusterSize").get<long>();
    s.patterns.push_back(std::move(p));
  }
  return s;
}

}  // namespace seqsum
