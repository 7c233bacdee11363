#include "seqsum/sententree.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "seqsum/errors.hpp"

namespace seqsum {
namespace {

// Subsequence automaton per sequence: next[i * A + e] = smallest j >= i with
// events[j] == e, or len when absent. Makes greedy left-to-right matching O(|pattern|).
struct SuccessorTable {
  std::vector<int> next;
  int len = 0;
  int alphabet = 0;

  void build(const std::vector<int>& events, int a) {
    len = static_cast<int>(events.size());
    alphabet = a;
    next.assign(static_cast<std::size_t>(len + 1) * static_cast<std::size_t>(a), len);
    for (int i = len - 1; i >= 0; --i) {
      for (int e = 0; e < a; ++e)
        next[static_cast<std::size_t>(i) * a + e] = next[static_cast<std::size_t>(i + 1) * a + e];
      next[static_cast<std::size_t>(i) * a + events[static_cast<std::size_t>(i)]] = i;
    }
  }

  // Greedy match; fills `positions` (one per pattern element) on success.
  bool match(const std::vector<int>& pattern, std::vector<int>& positions) const {
    positions.clear();
    int at = 0;
    for (int e : pattern) {
      if (e < 0 || e >= alphabet) return false;
      int j = next[static_cast<std::size_t>(at) * alphabet + e];
      if (j >= len) return false;
      positions.push_back(j);
      at = j + 1;
    }
    return true;
  }
};

struct NodeObj {
  int event;
  long support;      // sequences matching the pattern when the node was created
  double avg_index;  // mean matched position at creation
};

struct Candidate {
  long count = 0;
  std::size_t gap = 0;
  int event = -1;
  double sum_positions = 0.0;
};

struct Pattern {
  std::vector<int> nodes;         // NodeObj indices in pattern order
  std::vector<std::size_t> seqs;  // supporting sequence indices
  bool is_seed = false;
  bool active = true;
  std::vector<Candidate> pending;  // ranked qualifying extensions (non-seed: frozen set)
  std::size_t next_pending = 0;
};

struct Grower {
  const Dataset& d;
  long threshold;
  std::size_t node_cap;
  std::vector<SuccessorTable> succ;
  std::vector<double> global_avg;  // avg_index(d, e); +inf when the event never occurs
  std::vector<NodeObj> node_objs;
  std::vector<Pattern> patterns;

  bool candidate_better(const Candidate& a, const Candidate& b) const {
    if (a.count != b.count) return a.count > b.count;
    double ga = global_avg[static_cast<std::size_t>(a.event)];
    double gb = global_avg[static_cast<std::size_t>(b.event)];
    if (ga != gb) return ga < gb;
    if (a.event != b.event) return a.event < b.event;
    return a.gap < b.gap;
  }

  std::vector<int> events_of(const Pattern& p) const {
    std::vector<int> ev;
    ev.reserve(p.nodes.size());
    for (int n : p.nodes) ev.push_back(node_objs[static_cast<std::size_t>(n)].event);
    return ev;
  }

  // All single-event insertions meeting the threshold over `seqs`, best first.
  std::vector<Candidate> rank_extensions(const Pattern& p, const std::vector<std::size_t>& seqs) const {
    std::vector<int> base = events_of(p);
    std::vector<Candidate> out;
    std::vector<int> extended(base.size() + 1);
    std::vector<int> positions;
    int a = static_cast<int>(d.alphabet.size());
    for (std::size_t gap = 0; gap <= base.size(); ++gap) {
      for (int e = 0; e < a; ++e) {
        std::copy(base.begin(), base.begin() + static_cast<std::ptrdiff_t>(gap), extended.begin());
        extended[gap] = e;
        std::copy(base.begin() + static_cast<std::ptrdiff_t>(gap), base.end(),
                  extended.begin() + static_cast<std::ptrdiff_t>(gap) + 1);
        Candidate c{0, gap, e, 0.0};
        for (std::size_t s : seqs) {
          if (succ[s].match(extended, positions)) {
            ++c.count;
            c.sum_positions += static_cast<double>(positions[gap]);
          }
        }
        if (c.count >= threshold) out.push_back(c);
      }
    }
    std::sort(out.begin(), out.end(),
              [this](const Candidate& x, const Candidate& y) { return candidate_better(x, y); });
    return out;
  }

  void spawn(std::size_t pi, const Candidate& c) {
    // Re-match to collect the subset (rank_extensions only kept counts).
    Pattern& p = patterns[pi];
    std::vector<int> extended = events_of(p);
    extended.insert(extended.begin() + static_cast<std::ptrdiff_t>(c.gap), c.event);
    std::vector<std::size_t> matched;
    std::vector<int> positions;
    for (std::size_t s : p.seqs)
      if (succ[s].match(extended, positions)) matched.push_back(s);

    int node_id = static_cast<int>(node_objs.size());
    node_objs.push_back({c.event, c.count, c.sum_positions / static_cast<double>(c.count)});

    Pattern child;
    child.nodes = p.nodes;
    child.nodes.insert(child.nodes.begin() + static_cast<std::ptrdiff_t>(c.gap), node_id);
    child.seqs = matched;
    child.pending = rank_extensions(child, child.seqs);
    patterns.push_back(std::move(child));

    if (patterns[pi].is_seed) {
      // The seed hands the matched subset over and keeps only the remainder,
      // so distinct roots split the dataset between them.
      std::vector<std::size_t> rest;
      std::set_difference(patterns[pi].seqs.begin(), patterns[pi].seqs.end(), matched.begin(),
                          matched.end(), std::back_inserter(rest));
      patterns[pi].seqs = std::move(rest);
    }
  }

  void run() {
    while (node_objs.size() < node_cap) {
      // Highest current support first; creation order breaks ties.
      std::size_t best = patterns.size();
      for (std::size_t i = 0; i < patterns.size(); ++i) {
        if (!patterns[i].active) continue;
        if (best == patterns.size() || patterns[i].seqs.size() > patterns[best].seqs.size())
          best = i;
      }
      if (best == patterns.size()) break;

      Pattern& p = patterns[best];
      if (p.is_seed) p.pending = rank_extensions(p, p.seqs);  // remainder shrinks
      std::size_t& k = p.next_pending;
      if (p.is_seed) k = 0;
      if (k >= p.pending.size()) {
        p.active = false;
        continue;
      }
      Candidate c = p.pending[k++];
      spawn(best, c);
    }
  }
};

}  // namespace

bool contains_subsequence(const std::vector<int>& events, const std::vector<int>& pattern) {
  std::size_t j = 0;
  for (int e : events) {
    if (j < pattern.size() && e == pattern[j]) ++j;
    if (j == pattern.size()) return true;
  }
  return pattern.empty();
}

long subsequence_support(const std::vector<Sequence>& sequences, const std::vector<int>& pattern) {
  long n = 0;
  for (const auto& s : sequences)
    if (contains_subsequence(s.events, pattern)) ++n;
  return n;
}

long subsequence_support(const Dataset& d, const std::vector<int>& pattern) {
  return subsequence_support(d.sequences, pattern);
}

Summary mine_sententree(const Dataset& d, MinSupport ms, SentenTreeOptions opts) {
  if (d.sequences.empty()) throw EmptyDatasetError("mine_sententree on empty dataset");

  Grower g{d, ms.absolute_threshold(d.sequences.size()), opts.node_cap, {}, {}, {}, {}};
  g.succ.resize(d.sequences.size());
  for (std::size_t i = 0; i < d.sequences.size(); ++i)
    g.succ[i].build(d.sequences[i].events, static_cast<int>(d.alphabet.size()));
  g.global_avg.resize(d.alphabet.size());
  for (std::size_t e = 0; e < d.alphabet.size(); ++e) {
    auto v = avg_index(d, static_cast<int>(e));
    g.global_avg[e] = v ? *v : std::numeric_limits<double>::infinity();
  }

  Pattern seed;
  seed.is_seed = true;
  seed.seqs.resize(d.sequences.size());
  for (std::size_t i = 0; i < d.sequences.size(); ++i) seed.seqs[i] = i;
  g.patterns.push_back(std::move(seed));
  g.run();

  Summary s;
  s.kind = SummaryKind::Dag;
  s.meta = {"sententree", ms.fraction, d.name};
  for (std::size_t i = 0; i < g.node_objs.size(); ++i) {
    const auto& n = g.node_objs[i];
    s.nodes.push_back({static_cast<int>(i), n.event, d.label_of(n.event), n.support, n.avg_index, false});
  }

  // Every pattern counts as final (active ones were only cut off by the node cap).
  std::map<std::pair<int, int>, std::set<std::size_t>> flows;
  for (const auto& p : g.patterns)
    for (std::size_t i = 0; i + 1 < p.nodes.size(); ++i)
      flows[{p.nodes[i], p.nodes[i + 1]}].insert(p.seqs.begin(), p.seqs.end());
  for (const auto& [key, seqs] : flows)
    s.edges.push_back({key.first, key.second, static_cast<long>(seqs.size())});
  return s;
}

}  // namespace seqsum
