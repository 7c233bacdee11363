#pragma once

#include <cstddef>
#include <vector>

#include "seqsum/coreflow.hpp"  // MinSupport
#include "seqsum/dataset.hpp"
#include "seqsum/summary.hpp"

namespace seqsum {

struct SentenTreeOptions {
  std::size_t node_cap = 50;  // growth stops once this many pattern nodes exist
};

// Pattern-set growth merged into a DAG. Starting from the empty pattern supported
// by all sequences, the highest-support active pattern repeatedly spawns its best
// single-event insertion (support over the pattern's own sequences, greedy
// left-to-right subsequence matching) while the extension meets the absolute
// threshold. Non-empty patterns keep their full support set and may spawn several
// extensions; the empty seed hands each matched subset over and continues on the
// remainder, so top-level roots partition the dataset. Nodes created by extensions
// are shared with descendant patterns, which merges the final pattern set into one
// acyclic graph; edge support counts the distinct sequences flowing along an
// adjacency in the final patterns.
Summary mine_sententree(const Dataset& d, MinSupport ms, SentenTreeOptions opts = {});

// Number of sequences containing `pattern` as a subsequence (greedy left-to-right).
long subsequence_support(const Dataset& d, const std::vector<int>& pattern);
long subsequence_support(const std::vector<Sequence>& sequences, const std::vector<int>& pattern);

// Greedy left-to-right containment check for one sequence.
bool contains_subsequence(const std::vector<int>& events, const std::vector<int>& pattern);

}  // namespace seqsum
