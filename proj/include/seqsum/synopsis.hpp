#pragma once

#include <cstddef>
#include <vector>

#include "seqsum/dataset.hpp"
#include "seqsum/summary.hpp"

namespace seqsum {

struct SynopsisParams {
  double lambda = 0.5;        // in (0, 1]; higher means finer (more patterns)
  double pattern_weight = 0;  // (1 - lambda) * mean sequence length

  static SynopsisParams for_dataset(double lambda, const Dataset& d);
};

struct Cluster {
  std::vector<std::size_t> members;  // indices into Dataset::sequences, ascending
  std::vector<int> pattern;          // representative subsequence (event ids)
  double edit_cost = 0.0;            // sum of edit_cost(pattern, member) over members
};

// Insert/delete-only edit distance: |pattern| + |seq| - 2 * LCS(pattern, seq).
long edit_cost(const std::vector<int>& pattern, const std::vector<int>& seq);

// One longest common subsequence, leftmost alignment (matches taken as early
// as possible, deterministic direction preference on ties).
std::vector<int> longest_common_subsequence(const std::vector<int>& a, const std::vector<int>& b);

struct DescriptionLength {
  double total = 0.0;
};

// patternWeight * sum(|pattern|) + sum of per-member edit costs, recomputed from
// scratch. Throws InvariantError unless the clusters partition the dataset.
DescriptionLength objective(const std::vector<Cluster>& clusters, const SynopsisParams& params,
                            const Dataset& d);

struct SynopsisTrace {
  double initial_objective = 0.0;
  std::vector<double> objective_after_merge;  // one entry per accepted merge
};

// Greedy bottom-up merging: start with one cluster per sequence; repeatedly apply
// the pair merge with the largest strict description-length decrease (candidate
// pattern = LCS of the two patterns); stop when no merge improves. Emits one
// linear pattern per surviving cluster as a LinearSet summary.
Summary mine_synopsis(const Dataset& d, const SynopsisParams& params,
                      SynopsisTrace* trace = nullptr);

}  // namespace seqsum
