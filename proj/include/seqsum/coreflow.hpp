#pragma once

#include <cstddef>

#include "seqsum/dataset.hpp"
#include "seqsum/summary.hpp"

namespace seqsum {

// Granularity for the support-threshold miners. The absolute threshold is derived
// once from the dataset size at mining start and never rescaled per branch.
struct MinSupport {
  double fraction = 0.1;  // in (0, 1]

  // ceil(fraction * num_sequences), at least 1. Throws std::invalid_argument
  // when the fraction is out of range.
  long absolute_threshold(std::size_t num_sequences) const;
};

// Rank-divide-trim mining of a consensus tree:
// rank events by (containment count desc, avg first-occurrence within the working
// suffixes asc, event id asc); the winner becomes a child node; sequences containing
// it are trimmed past its first occurrence and recursed under the new node; the rest
// stay under the same parent. A branch stops when no event reaches the threshold.
// The result is a Tree whose root is an explicit hidden virtual node.
Summary mine_coreflow(const Dataset& d, MinSupport ms);

}  // namespace seqsum
