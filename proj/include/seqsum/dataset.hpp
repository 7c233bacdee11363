#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace seqsum {

struct EventType {
  int id = 0;
  std::string label;

  bool operator==(const EventType&) const = default;
};

struct Sequence {
  std::string id;
  std::vector<int> events;  // indices into Dataset::alphabet, in temporal order

  bool operator==(const Sequence&) const = default;
};

struct Dataset {
  std::string name;
  std::vector<EventType> alphabet;  // first-appearance order; alphabet[i].id == i
  std::vector<Sequence> sequences;

  // -1 when the label is unknown.
  int event_id(std::string_view label) const;
  const std::string& label_of(int event) const;

  bool operator==(const Dataset&) const = default;
};

struct DatasetStats {
  std::size_t num_sequences = 0;
  std::size_t total_events = 0;
  std::size_t unique_events = 0;
  std::size_t min_length = 0;
  std::size_t max_length = 0;
  double median_length = 0.0;  // midpoint of the two middle values for even counts

  bool operator==(const DatasetStats&) const = default;
};

enum class DatasetFormat { Csv, Json };

// Throws ParseError on malformed input (with 1-based line numbers for CSV),
// SchemaError on JSON shape problems, EmptyDatasetError when no sequences survive.
Dataset load_dataset(const std::filesystem::path& path, DatasetFormat format);
Dataset load_dataset(const std::filesystem::path& path);  // format from extension

// CSV: header "sequence_id,event"; rows may be grouped or interleaved, row order
// within one sequence_id defines event order.
Dataset dataset_from_csv(std::istream& in, std::string name);
Dataset dataset_from_json(const std::string& text);
std::string dataset_to_json(const Dataset& d);  // canonical: sorted keys, 2-space indent

DatasetStats stats(const Dataset& d);

// Mean 0-based position of the *first* occurrence of `event` across the sequences
// that contain it; nullopt when no sequence does.
std::optional<double> avg_index(const Dataset& d, int event);

}  // namespace seqsum
