#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "seqsum/dataset.hpp"

namespace seqsum {

// Shape parameters for a generated dataset: sequence count, alphabet size and
// the length distribution (min / median / max). Lengths are drawn half from
// [min, median] and half from [median, max], so the requested median is hit
// approximately.
struct SyntheticShape {
  std::string name;
  int num_sequences = 0;
  int alphabet_size = 0;
  int min_length = 1;
  int max_length = 1;
  double median_length = 1.0;
};

// Deterministically generates a dataset for the shape. Events are drawn from a
// harmonically decaying weight profile (a few frequent event types, a long
// tail) and sequences are biased to open with the most frequent type, which
// gives the miners shared structure to find. Only raw mt19937 draws are used,
// so output is identical across platforms and standard libraries.
Dataset make_synthetic(const SyntheticShape& shape, std::uint32_t seed);

// Six stock shapes mirroring the corpora commonly used for event-sequence
// summarization (trauma resuscitation, emergency room, basketball possessions,
// application logs, task workflows, academic careers).
std::vector<SyntheticShape> reference_shapes();

}  // namespace seqsum
