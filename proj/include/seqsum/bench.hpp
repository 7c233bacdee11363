#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "seqsum/dataset.hpp"

namespace seqsum {

// One aggregated measurement: a technique run at one granularity level over
// one dataset. Wall time is the median across repeats; peak memory is the
// largest resident-set growth observed by a 10 ms sampler during any repeat
// (a lower bound on the true peak).
struct BenchRecord {
  std::string technique;  // "coreflow" | "sententree" | "synopsis"
  std::string dataset;
  double granularity = 0.0;  // minSupport fraction or lambda, per technique
  double wall_time_ms = 0.0;
  long peak_memory_bytes = 0;
  long nodes = 0;
  long edges = 0;
  long patterns = 0;
  bool ok = true;  // false when the miner threw; counts are zero then

  bool operator==(const BenchRecord&) const = default;
};

// The six granularity levels per technique family, finest first.
struct GranularityGrid {
  std::vector<double> min_support_levels = {0.05, 0.10, 0.15, 0.20, 0.25, 0.30};
  std::vector<double> lambda_levels = {0.90, 0.75, 0.60, 0.45, 0.30, 0.15};
};

// Runs 3 techniques × 6 levels over every dataset, strictly sequentially so
// peak-memory attribution stays per-run. Miner exceptions become failed
// records; the sweep continues. Returns 18 × |datasets| records in
// (dataset, technique, level) order.
std::vector<BenchRecord> run_sweep(const std::vector<Dataset>& datasets,
                                   const GranularityGrid& grid, int repeats);

// CSV round-trip. Header is exactly:
//   technique,dataset,granularity,wall_time_ms,peak_memory_bytes,nodes,edges,patterns,status
// Fields are comma-free by construction (dataset names must not contain commas).
std::string records_to_csv(const std::vector<BenchRecord>& records);
std::vector<BenchRecord> records_from_csv(const std::string& text);

struct BenchReport {
  std::string csv;
  std::string chart_svg;
};

// CSV plus a small log-scale chart: per dataset, a wall-time panel and a
// peak-memory panel, granularity on the x axis from finer to coarser. Values
// are floored at 1 before taking logs so zero deltas still plot.
BenchReport emit_report(const std::vector<BenchRecord>& records);

}  // namespace seqsum
