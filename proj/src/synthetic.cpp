#include "seqsum/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace seqsum {
namespace {

// gen() % n has negligible bias here and, unlike std::uniform_int_distribution,
// produces the same stream on every standard library.
std::uint32_t draw(std::mt19937& gen, std::uint32_t n) { return gen() % n; }

}  // namespace

Dataset make_synthetic(const SyntheticShape& shape, std::uint32_t seed) {
  if (shape.num_sequences < 1 || shape.alphabet_size < 1 || shape.min_length < 1 ||
      shape.max_length < shape.min_length || shape.median_length < shape.min_length ||
      shape.median_length > shape.max_length)
    throw std::invalid_argument("make_synthetic: inconsistent shape parameters");

  Dataset d;
  d.name = shape.name;
  for (int i = 0; i < shape.alphabet_size; ++i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "ev%02d", i);
    d.alphabet.push_back({i, buf});
  }

  std::mt19937 gen(seed);

  // Harmonic event weights scaled to integers for exact cross-platform draws.
  std::vector<std::uint32_t> cumulative;
  std::uint32_t total = 0;
  for (int i = 0; i < shape.alphabet_size; ++i) {
    total += static_cast<std::uint32_t>(std::lround(1000.0 / (i + 1)));
    cumulative.push_back(total);
  }
  auto weighted_event = [&]() {
    std::uint32_t r = draw(gen, total);
    return static_cast<int>(std::lower_bound(cumulative.begin(), cumulative.end(), r + 1) -
                            cumulative.begin());
  };

  const int lo = shape.min_length;
  const int mid_lo = static_cast<int>(std::floor(shape.median_length));
  const int mid_hi = static_cast<int>(std::ceil(shape.median_length));
  const int hi = shape.max_length;

  for (int s = 0; s < shape.num_sequences; ++s) {
    int len;
    if (draw(gen, 2) == 0)
      len = lo + static_cast<int>(draw(gen, static_cast<std::uint32_t>(mid_lo - lo + 1)));
    else
      len = mid_hi + static_cast<int>(draw(gen, static_cast<std::uint32_t>(hi - mid_hi + 1)));

    Sequence seq;
    seq.id = "s" + std::to_string(s);
    seq.events.reserve(static_cast<std::size_t>(len));
    for (int k = 0; k < len; ++k) {
      // Three in four sequences open with the dominant event type.
      if (k == 0 && draw(gen, 4) != 0)
        seq.events.push_back(0);
      else
        seq.events.push_back(weighted_event());
    }
    d.sequences.push_back(std::move(seq));
  }
  return d;
}

std::vector<SyntheticShape> reference_shapes() {
  return {
      {"trauma", 215, 11, 5, 11, 9.0},
      {"emergency", 100, 6, 3, 16, 4.5},
      {"basketball", 69, 13, 4, 13, 6.0},
      {"vast", 1000, 6, 2, 49, 8.0},
      {"workflow", 45, 16, 2, 21, 11.0},
      {"career", 40, 10, 11, 32, 17.0},
  };
}

}  // namespace seqsum
