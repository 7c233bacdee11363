#include "seqsum/synopsis.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

#include "seqsum/errors.hpp"

namespace seqsum {
namespace {

// Accept a merge only when it beats this margin, so "strictly decreasing objective"
// survives float summation noise in from-scratch recomputation.
constexpr double kGainEps = 1e-9;

int lcs_length(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<int> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = a.size(); i-- > 0;) {
    for (std::size_t j = b.size(); j-- > 0;) {
      cur[j] = a[i] == b[j] ? prev[j + 1] + 1 : std::max(prev[j], cur[j + 1]);
    }
    std::swap(prev, cur);
  }
  return prev[0];
}

struct ClusterState {
  std::vector<std::size_t> members;        // ascending sequence indices
  std::vector<std::size_t> members_by_id;  // same indices, sorted by sequence id string
  std::vector<int> pattern;
  double cost = 0.0;
  unsigned gen = 0;
  bool alive = true;
};

struct PairEntry {
  double gain;         // negative = improvement
  std::size_t comb;    // combined member count (smaller preferred on gain ties)
  unsigned i, j;       // cluster slots, i < j
  unsigned gen_i, gen_j;
};

struct EntryWorse {
  bool operator()(const PairEntry& a, const PairEntry& b) const {
    if (a.gain != b.gain) return a.gain > b.gain;  // min-gain at top
    if (a.comb != b.comb) return a.comb > b.comb;
    if (a.i != b.i) return a.i > b.i;  // stable heap order; real lex tie-break happens at pop
    return a.j > b.j;
  }
};

struct Merger {
  const Dataset& d;
  double w;
  std::vector<ClusterState> clusters;
  std::priority_queue<PairEntry, std::vector<PairEntry>, EntryWorse> heap;

  double cost_of(const std::vector<int>& pattern, const std::vector<std::size_t>& members) const {
    double c = 0.0;
    for (std::size_t m : members)
      c += static_cast<double>(edit_cost(pattern, d.sequences[m].events));
    return c;
  }

  double pair_gain(const ClusterState& a, const ClusterState& b, std::vector<int>* pattern_out,
                   double* cost_out) const {
    std::vector<int> pat = longest_common_subsequence(a.pattern, b.pattern);
    double new_cost = 0.0;
    for (std::size_t m : a.members) new_cost += static_cast<double>(edit_cost(pat, d.sequences[m].events));
    for (std::size_t m : b.members) new_cost += static_cast<double>(edit_cost(pat, d.sequences[m].events));
    double gain = w * (static_cast<double>(pat.size()) - static_cast<double>(a.pattern.size()) -
                       static_cast<double>(b.pattern.size())) +
                  new_cost - a.cost - b.cost;
    if (pattern_out) *pattern_out = std::move(pat);
    if (cost_out) *cost_out = new_cost;
    return gain;
  }

  void push_pair(unsigned i, unsigned j) {
    if (i > j) std::swap(i, j);
    const auto& a = clusters[i];
    const auto& b = clusters[j];
    double gain = pair_gain(a, b, nullptr, nullptr);
    if (gain < -kGainEps)
      heap.push({gain, a.members.size() + b.members.size(), i, j, a.gen, b.gen});
  }

  bool entry_valid(const PairEntry& e) const {
    return clusters[e.i].alive && clusters[e.j].alive && clusters[e.i].gen == e.gen_i &&
           clusters[e.j].gen == e.gen_j;
  }

  std::vector<const std::string*> merged_id_list(const PairEntry& e) const {
    const auto& x = clusters[e.i].members_by_id;
    const auto& y = clusters[e.j].members_by_id;
    std::vector<const std::string*> out;
    out.reserve(x.size() + y.size());
    std::size_t xi = 0, yi = 0;
    while (xi < x.size() || yi < y.size()) {
      if (xi < x.size() && (yi >= y.size() || d.sequences[x[xi]].id <= d.sequences[y[yi]].id))
        out.push_back(&d.sequences[x[xi++]].id);
      else
        out.push_back(&d.sequences[y[yi++]].id);
    }
    return out;
  }

  // Lexicographic comparison of the merged clusters' member-id lists.
  bool lex_less(const PairEntry& a, const PairEntry& b) const {
    auto la = merged_id_list(a);
    auto lb = merged_id_list(b);
    for (std::size_t k = 0; k < la.size() && k < lb.size(); ++k)
      if (*la[k] != *lb[k]) return *la[k] < *lb[k];
    return la.size() < lb.size();
  }

  // Best valid entry under (largest decrease, smallest combined cluster,
  // lexicographic member ids); nullopt when no improving merge remains.
  bool pop_best(PairEntry& out) {
    while (!heap.empty()) {
      PairEntry top = heap.top();
      heap.pop();
      if (!entry_valid(top)) continue;
      std::vector<PairEntry> ties;
      while (!heap.empty()) {
        const PairEntry& peek = heap.top();
        if (peek.gain != top.gain || peek.comb != top.comb) break;
        if (entry_valid(peek)) ties.push_back(peek);
        heap.pop();
      }
      PairEntry best = top;
      for (const auto& t : ties)
        if (lex_less(t, best)) best = t;
      for (const auto& t : ties)
        if (t.i != best.i || t.j != best.j) heap.push(t);
      if (best.i != top.i || best.j != top.j) heap.push(top);
      out = best;
      return true;
    }
    return false;
  }

  double live_objective() const {
    double total = 0.0;
    for (const auto& c : clusters)
      if (c.alive) total += w * static_cast<double>(c.pattern.size()) + c.cost;
    return total;
  }
};

std::vector<std::size_t> sorted_by_id(const Dataset& d, std::vector<std::size_t> idx) {
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return d.sequences[a].id < d.sequences[b].id; });
  return idx;
}

}  // namespace

SynopsisParams SynopsisParams::for_dataset(double lambda, const Dataset& d) {
  if (!(lambda > 0.0) || lambda > 1.0)
    throw std::invalid_argument("lambda must be in (0, 1]");
  if (d.sequences.empty()) throw EmptyDatasetError("synopsis params on empty dataset");
  std::size_t total = 0;
  for (const auto& s : d.sequences) total += s.events.size();
  double mean_len = static_cast<double>(total) / static_cast<double>(d.sequences.size());
  return {lambda, (1.0 - lambda) * mean_len};
}

long edit_cost(const std::vector<int>& pattern, const std::vector<int>& seq) {
  return static_cast<long>(pattern.size()) + static_cast<long>(seq.size()) -
         2L * lcs_length(pattern, seq);
}

std::vector<int> longest_common_subsequence(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t n = a.size(), m = b.size();
  if (n == 0 || m == 0) return {};
  // Suffix DP so reconstruction can run forward and take matches leftmost.
  std::vector<int> L((n + 1) * (m + 1), 0);
  auto at = [m](std::size_t i, std::size_t j) { return i * (m + 1) + j; };
  for (std::size_t i = n; i-- > 0;)
    for (std::size_t j = m; j-- > 0;)
      L[at(i, j)] = a[i] == b[j] ? L[at(i + 1, j + 1)] + 1
                                 : std::max(L[at(i + 1, j)], L[at(i, j + 1)]);
  std::vector<int> out;
  std::size_t i = 0, j = 0;
  while (i < n && j < m) {
    if (a[i] == b[j] && L[at(i, j)] == L[at(i + 1, j + 1)] + 1) {
      out.push_back(a[i]);
      ++i;
      ++j;
    } else if (L[at(i + 1, j)] >= L[at(i, j + 1)]) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

DescriptionLength objective(const std::vector<Cluster>& clusters, const SynopsisParams& params,
                            const Dataset& d) {
  std::vector<int> seen(d.sequences.size(), 0);
  for (const auto& c : clusters)
    for (std::size_t m : c.members) {
      if (m >= d.sequences.size()) throw InvariantError("cluster member out of range");
      ++seen[m];
    }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (seen[i] != 1) throw InvariantError("clusters do not partition the dataset");

  double total = 0.0;
  for (const auto& c : clusters) {
    total += params.pattern_weight * static_cast<double>(c.pattern.size());
    for (std::size_t m : c.members)
      total += static_cast<double>(edit_cost(c.pattern, d.sequences[m].events));
  }
  return {total};
}

Summary mine_synopsis(const Dataset& d, const SynopsisParams& params, SynopsisTrace* trace) {
  if (d.sequences.empty()) throw EmptyDatasetError("mine_synopsis on empty dataset");
  if (!(params.lambda > 0.0) || params.lambda > 1.0)
    throw std::invalid_argument("lambda must be in (0, 1]");

  Merger mg{d, params.pattern_weight, {}, {}};
  std::size_t n = d.sequences.size();
  mg.clusters.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ClusterState c;
    c.members = {i};
    c.members_by_id = {i};
    c.pattern = d.sequences[i].events;
    mg.clusters.push_back(std::move(c));
  }
  if (trace) {
    trace->initial_objective = mg.live_objective();
    trace->objective_after_merge.clear();
  }

  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i + 1; j < n; ++j) mg.push_pair(i, j);

  PairEntry e{};
  while (mg.pop_best(e)) {
    ClusterState& a = mg.clusters[e.i];
    ClusterState& b = mg.clusters[e.j];
    std::vector<int> pattern;
    double new_cost = 0.0;
    mg.pair_gain(a, b, &pattern, &new_cost);

    std::vector<std::size_t> members;
    std::merge(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
               std::back_inserter(members));
    a.members = std::move(members);
    a.members_by_id = sorted_by_id(d, a.members);
    a.pattern = std::move(pattern);
    a.cost = new_cost;
    ++a.gen;
    b.alive = false;

    if (trace) trace->objective_after_merge.push_back(mg.live_objective());

    for (unsigned k = 0; k < n; ++k)
      if (k != e.i && mg.clusters[k].alive) mg.push_pair(e.i, k);
  }

  // Emission order: big clusters first, then lexicographic member ids.
  std::vector<unsigned> order;
  for (unsigned i = 0; i < n; ++i)
    if (mg.clusters[i].alive) order.push_back(i);
  std::sort(order.begin(), order.end(), [&](unsigned x, unsigned y) {
    const auto& cx = mg.clusters[x];
    const auto& cy = mg.clusters[y];
    if (cx.members.size() != cy.members.size()) return cx.members.size() > cy.members.size();
    for (std::size_t k = 0; k < cx.members_by_id.size(); ++k) {
      const auto& ix = d.sequences[cx.members_by_id[k]].id;
      const auto& iy = d.sequences[cy.members_by_id[k]].id;
      if (ix != iy) return ix < iy;
    }
    return false;
  });

  Summary s;
  s.kind = SummaryKind::LinearSet;
  s.meta = {"synopsis", params.lambda, d.name};
  for (unsigned ci : order) {
    const auto& c = mg.clusters[ci];
    long size = static_cast<long>(c.members.size());
    std::vector<double> pos_sum(c.pattern.size(), 0.0);
    std::vector<long> pos_cnt(c.pattern.size(), 0);
    for (std::size_t m : c.members) {
      const auto& ev = d.sequences[m].events;
      std::size_t pi = 0;
      for (std::size_t idx = 0; idx < ev.size() && pi < c.pattern.size(); ++idx) {
        if (ev[idx] == c.pattern[pi]) {
          pos_sum[pi] += static_cast<double>(idx);
          pos_cnt[pi] += 1;
          ++pi;
        }
      }
    }
    SummaryPattern sp;
    sp.cluster_size = size;
    int prev_id = -1;
    for (std::size_t k = 0; k < c.pattern.size(); ++k) {
      int id = static_cast<int>(s.nodes.size());
      double avg = pos_cnt[k] > 0 ? pos_sum[k] / static_cast<double>(pos_cnt[k]) : 0.0;
      s.nodes.push_back({id, c.pattern[k], d.label_of(c.pattern[k]), size, avg, false});
      sp.nodes.push_back(id);
      if (prev_id >= 0) s.edges.push_back({prev_id, id, size});
      prev_id = id;
    }
    s.patterns.push_back(std::move(sp));
  }
  return s;
}

}  // namespace seqsum
