#include "support/fixtures.hpp"

#include <string>

namespace testsupport {
namespace {

using seqsum::Dataset;
using seqsum::Sequence;
using seqsum::Summary;

Dataset labeled(const std::string& name, const std::vector<std::string>& labels,
                const std::vector<std::vector<int>>& rows) {
  Dataset d;
  d.name = name;
  for (std::size_t i = 0; i < labels.size(); ++i)
    d.alphabet.push_back({static_cast<int>(i), labels[i]});
  for (std::size_t i = 0; i < rows.size(); ++i)
    d.sequences.push_back({"s" + std::to_string(i + 1), rows[i]});
  return d;
}

}  // namespace

Dataset worked_dataset() {
  return labeled("worked", {"A", "B", "C", "D"}, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}});
}

Dataset duplicate_pair_dataset() {
  return labeled("pair", {"A", "B"}, {{0, 1}, {0, 1}});
}

Dataset single_ab_dataset() { return labeled("single", {"A", "B"}, {{0, 1}}); }

Dataset emergency_dataset() {
  // ids: 0 Arrival, 1 Emergency, 2 ICU, 3 Floor, 4 Discharge-Alive, 5 Die
  Dataset d;
  d.name = "emergency";
  const std::vector<std::string> labels = {"Arrival", "Emergency", "ICU",
                                           "Floor",   "Discharge-Alive", "Die"};
  for (std::size_t i = 0; i < labels.size(); ++i)
    d.alphabet.push_back({static_cast<int>(i), labels[i]});

  int seq_no = 0;
  auto add = [&](std::vector<int> events, int copies) {
    for (int c = 0; c < copies; ++c) {
      ++seq_no;
      d.sequences.push_back({"p" + std::to_string(seq_no), events});
    }
  };

  // Lengths: 15x3 + 35x4 + 44x5 + 5x6 + 1x16 = 100 sequences (median 4.5).
  // Discharge-Alive enders: 7 + 15 + 14 + 1 = 37.
  add({0, 1, 5}, 8);
  add({0, 1, 4}, 7);
  add({0, 1, 2, 5}, 20);
  add({0, 1, 2, 4}, 15);
  add({0, 1, 2, 3, 5}, 30);
  add({0, 1, 2, 3, 4}, 14);
  add({0, 1, 2, 3, 2, 5}, 4);
  add({0, 1, 2, 3, 2, 4}, 1);
  add({0, 1, 2, 3, 2, 3, 2, 3, 2, 3, 2, 3, 2, 3, 2, 5}, 1);
  return d;
}

Summary emergency_summary() {
  Summary s;
  s.kind = seqsum::SummaryKind::Tree;
  s.meta = {"fixture", 0.0, "emergency"};
  s.nodes.push_back({0, seqsum::kVirtualRootEvent, "", 100, 0.0, true});
  s.nodes.push_back({1, 1, "Emergency", 100, 1.0, false});
  // Discharge-Alive sits at the last index of its 37 sequences:
  // (7*2 + 15*3 + 14*4 + 1*5) / 37 = 120/37.
  s.nodes.push_back({2, 4, "Discharge-Alive", 37, 120.0 / 37.0, false});
  s.edges.push_back({0, 1, 100});
  s.edges.push_back({1, 2, 37});
  return s;
}

Dataset random_dataset(std::mt19937& gen, int max_seqs, int max_types, int max_len) {
  auto draw = [&](int n) { return static_cast<int>(gen() % static_cast<std::uint32_t>(n)); };
  int types = 1 + draw(max_types);
  int seqs = 1 + draw(max_seqs);

  Dataset d;
  d.name = "random";
  for (int i = 0; i < types; ++i) d.alphabet.push_back({i, std::string(1, char('A' + i))});
  for (int s = 0; s < seqs; ++s) {
    Sequence seq;
    seq.id = "s" + std::to_string(s);
    int len = 1 + draw(max_len);
    for (int k = 0; k < len; ++k) seq.events.push_back(draw(types));
    d.sequences.push_back(std::move(seq));
  }
  return d;
}

Summary random_dag_summary(std::mt19937& gen) {
  auto draw = [&](int n) { return static_cast<int>(gen() % static_cast<std::uint32_t>(n)); };
  int n = 2 + draw(9);

  Summary s;
  s.kind = seqsum::SummaryKind::Dag;
  s.meta = {"random", 0.0, "generated"};
  for (int i = 0; i < n; ++i) {
    int event = draw(5);
    long support = 5 + draw(16);
    double avg = static_cast<double>(draw(40)) / 10.0;
    s.nodes.push_back({i, event, std::string(1, char('A' + event)), support, avg, false});
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (draw(100) >= 35) continue;  // ~1/3 edge density, ids ascending => acyclic
      long cap = std::min(s.nodes[static_cast<std::size_t>(i)].support,
                          s.nodes[static_cast<std::size_t>(j)].support);
      s.edges.push_back({i, j, 1 + draw(static_cast<int>(cap))});
    }
  return s;
}

}  // namespace testsupport
