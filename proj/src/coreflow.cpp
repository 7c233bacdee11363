#include "seqsum/coreflow.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "seqsum/errors.hpp"

namespace seqsum {
namespace {

// A sequence suffix still in play on some branch: original sequence + trim offset.
struct WorkingSeq {
  std::size_t seq;
  std::size_t offset;
};

struct EventTally {
  long count = 0;
  std::size_t sum_relative_first = 0;  // first occurrence within the trimmed suffix
  std::size_t sum_original_first = 0;  // first occurrence in the untrimmed sequence
};

struct Miner {
  const Dataset& d;
  long threshold;
  Summary out;

  // Exact rank comparison: higher count wins; then lower mean relative index
  // (compared as cross-multiplied integers to dodge float ties); then lower id.
  bool better(const EventTally& a, int ae, const EventTally& b, int be) const {
    if (a.count != b.count) return a.count > b.count;
    auto lhs = static_cast<unsigned long long>(a.sum_relative_first) * static_cast<unsigned long long>(b.count);
    auto rhs = static_cast<unsigned long long>(b.sum_relative_first) * static_cast<unsigned long long>(a.count);
    if (lhs != rhs) return lhs < rhs;
    return ae < be;
  }

  void mine(std::vector<WorkingSeq> working, int parent) {
    while (!working.empty()) {
      std::vector<EventTally> tally(d.alphabet.size());
      for (const auto& w : working) {
        const auto& events = d.sequences[w.seq].events;
        // First occurrence per event, scanned once.
        std::vector<bool> seen(d.alphabet.size(), false);
        for (std::size_t i = w.offset; i < events.size(); ++i) {
          auto e = static_cast<std::size_t>(events[i]);
          if (seen[e]) continue;
          seen[e] = true;
          tally[e].count += 1;
          tally[e].sum_relative_first += i - w.offset;
          tally[e].sum_original_first += i;
        }
      }

      int best = -1;
      for (std::size_t e = 0; e < tally.size(); ++e) {
        if (tally[e].count < threshold) continue;
        if (best < 0 || better(tally[e], static_cast<int>(e), tally[static_cast<std::size_t>(best)], best))
          best = static_cast<int>(e);
      }
      if (best < 0) return;

      const auto& win = tally[static_cast<std::size_t>(best)];
      int node_id = static_cast<int>(out.nodes.size());
      out.nodes.push_back({node_id, best, d.label_of(best), win.count,
                           static_cast<double>(win.sum_original_first) / static_cast<double>(win.count),
                           false});
      out.edges.push_back({parent, node_id, win.count});

      std::vector<WorkingSeq> containing;
      std::vector<WorkingSeq> rest;
      for (const auto& w : working) {
        const auto& events = d.sequences[w.seq].events;
        std::size_t hit = events.size();
        for (std::size_t i = w.offset; i < events.size(); ++i) {
          if (events[i] == best) {
            hit = i;
            break;
          }
        }
        if (hit < events.size())
          containing.push_back({w.seq, hit + 1});  // trim includes the matched event
        else
          rest.push_back(w);
      }
      mine(std::move(containing), node_id);
      working = std::move(rest);  // keep dividing under the same parent
    }
  }
};

}  // namespace

long MinSupport::absolute_threshold(std::size_t num_sequences) const {
  if (!(fraction > 0.0) || fraction > 1.0)
    throw std::invalid_argument("min-support fraction must be in (0, 1]");
  auto t = static_cast<long>(std::ceil(fraction * static_cast<double>(num_sequences)));
  return t < 1 ? 1 : t;
}

Summary mine_coreflow(const Dataset& d, MinSupport ms) {
  if (d.sequences.empty()) throw EmptyDatasetError("mine_coreflow on empty dataset");
  Miner m{d, ms.absolute_threshold(d.sequences.size()), {}};
  m.out.kind = SummaryKind::Tree;
  m.out.meta = {"coreflow", ms.fraction, d.name};
  m.out.nodes.push_back(
      {0, kVirtualRootEvent, "", static_cast<long>(d.sequences.size()), 0.0, true});

  std::vector<WorkingSeq> all;
  all.reserve(d.sequences.size());
  for (std::size_t i = 0; i < d.sequences.size(); ++i) all.push_back({i, 0});
  m.mine(std::move(all), 0);
  return std::move(m.out);
}

}  // namespace seqsum
