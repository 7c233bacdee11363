#pragma once

#include <string>
#include <vector>

namespace seqsum {

enum class SummaryKind { LinearSet, Tree, Dag };

// Event id used by the hidden virtual root of mined trees.
inline constexpr int kVirtualRootEvent = -1;

struct SummaryNode {
  int id = 0;
  int event = 0;            // alphabet id, kVirtualRootEvent for the virtual root
  std::string label;        // embedded so summaries are self-contained for render/eval
  long support = 0;         // count of sequences represented by the node
  double avg_index = 0.0;   // vertical-order key (mean first-occurrence position)
  bool hidden = false;

  bool operator==(const SummaryNode&) const = default;
};

struct SummaryEdge {
  int source = 0;
  int target = 0;
  long support = 0;

  bool operator==(const SummaryEdge&) const = default;
};

struct SummaryPattern {
  std::vector<int> nodes;  // node ids in pattern order
  long cluster_size = 0;

  bool operator==(const SummaryPattern&) const = default;
};

struct SummaryMeta {
  std::string technique;
  double granularity = 0.0;  // min-support fraction or lambda
  std::string dataset;

  bool operator==(const SummaryMeta&) const = default;
};

struct Summary {
  SummaryKind kind = SummaryKind::Tree;
  SummaryMeta meta;
  std::vector<SummaryNode> nodes;
  std::vector<SummaryEdge> edges;
  std::vector<SummaryPattern> patterns;  // LinearSet only; empty otherwise

  const SummaryNode* find_node(int id) const;

  bool operator==(const Summary&) const = default;
};

const char* to_string(SummaryKind kind);

// Structural checks for the declared kind. Returns human-readable violations;
// empty means the summary is well-formed. An empty summary is trivially ok.
std::vector<std::string> validate(const Summary& s);

// Canonical JSON: sorted object keys, nodes ordered by id, edges by (source, target).
// serialize(deserialize(x)) is a fixed point for canonical inputs.
std::string summary_to_json(const Summary& s);
Summary summary_from_json(const std::string& text);  // throws SchemaError / ParseError

}  // namespace seqsum
