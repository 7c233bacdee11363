#include "seqsum/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "seqsum/errors.hpp"

namespace seqsum {
namespace {

using json = nlohmann::json;

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

// Minimal CSV field splitter: supports double-quoted fields with "" escapes and
// embedded commas. Multi-line fields are not supported (event labels are short tokens).
std::vector<std::string> split_csv_row(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"' && cur.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw ParseError("unterminated quoted field", line_no);
  fields.push_back(std::move(cur));
  return fields;
}

int intern_label(Dataset& d, std::unordered_map<std::string, int>& ids, const std::string& label) {
  auto it = ids.find(label);
  if (it != ids.end()) return it->second;
  int id = static_cast<int>(d.alphabet.size());
  d.alphabet.push_back({id, label});
  ids.emplace(label, id);
  return id;
}

}  // namespace

int Dataset::event_id(std::string_view label) const {
  for (const auto& e : alphabet)
    if (e.label == label) return e.id;
  return -1;
}

const std::string& Dataset::label_of(int event) const {
  static const std::string kUnknown = "?";
  if (event < 0 || static_cast<std::size_t>(event) >= alphabet.size()) return kUnknown;
  return alphabet[static_cast<std::size_t>(event)].label;
}

Dataset dataset_from_csv(std::istream& in, std::string name) {
  Dataset d;
  d.name = std::move(name);

  std::string line;
  if (!std::getline(in, line)) throw EmptyDatasetError("dataset file is empty");
  if (strip_cr(line) != "sequence_id,event")
    throw ParseError("expected header \"sequence_id,event\"", 1);

  std::unordered_map<std::string, int> label_ids;
  std::unordered_map<std::string, std::size_t> seq_slot;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;  // tolerate blank lines (common at EOF)
    auto fields = split_csv_row(line, line_no);
    if (fields.size() != 2)
      throw ParseError("expected 2 fields, got " + std::to_string(fields.size()), line_no);
    const std::string& sid = fields[0];
    const std::string& label = fields[1];
    if (sid.empty()) throw ParseError("empty sequence_id", line_no);
    if (label.empty()) throw ParseError("empty event label", line_no);

    auto it = seq_slot.find(sid);
    if (it == seq_slot.end()) {
      it = seq_slot.emplace(sid, d.sequences.size()).first;
      d.sequences.push_back({sid, {}});
    }
    d.sequences[it->second].events.push_back(intern_label(d, label_ids, label));
  }
  if (d.sequences.empty()) throw EmptyDatasetError("no event rows in \"" + d.name + "\"");
  return d;
}

Dataset dataset_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), 0);
  }
  if (!j.is_object() || !j.contains("name") || !j["name"].is_string())
    throw SchemaError("dataset JSON needs a string \"name\"");
  if (!j.contains("sequences") || !j["sequences"].is_array())
    throw SchemaError("dataset JSON needs a \"sequences\" array");

  Dataset d;
  d.name = j["name"].get<std::string>();
  std::unordered_map<std::string, int> label_ids;
  std::unordered_map<std::string, bool> seen_ids;
  for (const auto& js : j["sequences"]) {
    if (!js.is_object() || !js.contains("id") || !js["id"].is_string() ||
        !js.contains("events") || !js["events"].is_array())
      throw SchemaError("each sequence needs a string \"id\" and an \"events\" array");
    Sequence s;
    s.id = js["id"].get<std::string>();
    if (seen_ids.count(s.id)) throw SchemaError("duplicate sequence id \"" + s.id + "\"");
    seen_ids[s.id] = true;
    if (js["events"].empty()) throw SchemaError("sequence \"" + s.id + "\" has no events");
    for (const auto& je : js["events"]) {
      if (!je.is_string()) throw SchemaError("events must be strings");
      s.events.push_back(intern_label(d, label_ids, je.get<std::string>()));
    }
    d.sequences.push_back(std::move(s));
  }
  if (d.sequences.empty()) throw EmptyDatasetError("dataset \"" + d.name + "\" has no sequences");
  return d;
}

std::string dataset_to_json(const Dataset& d) {
  json j;
  j["name"] = d.name;
  j["sequences"] = json::array();
  for (const auto& s : d.sequences) {
    json js;
    js["id"] = s.id;
    json ev = json::array();
    for (int e : s.events) ev.push_back(d.label_of(e));
    js["events"] = std::move(ev);
    j["sequences"].push_back(std::move(js));
  }
  return j.dump(2) + "\n";
}

Dataset load_dataset(const std::filesystem::path& path, DatasetFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  if (format == DatasetFormat::Csv) return dataset_from_csv(in, path.stem().string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return dataset_from_json(buf.str());
}

Dataset load_dataset(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  return load_dataset(path, ext == ".json" ? DatasetFormat::Json : DatasetFormat::Csv);
}

DatasetStats stats(const Dataset& d) {
  if (d.sequences.empty()) throw EmptyDatasetError("stats on empty dataset");
  DatasetStats st;
  st.num_sequences = d.sequences.size();
  st.unique_events = d.alphabet.size();
  std::vector<std::size_t> lengths;
  lengths.reserve(d.sequences.size());
  for (const auto& s : d.sequences) {
    lengths.push_back(s.events.size());
    st.total_events += s.events.size();
  }
  std::sort(lengths.begin(), lengths.end());
  st.min_length = lengths.front();
  st.max_length = lengths.back();
  std::size_t n = lengths.size();
  st.median_length = (n % 2 == 1)
                         ? static_cast<double>(lengths[n / 2])
                         : (static_cast<double>(lengths[n / 2 - 1]) + static_cast<double>(lengths[n / 2])) / 2.0;
  return st;
}

std::optional<double> avg_index(const Dataset& d, int event) {
  std::size_t count = 0;
  std::size_t sum = 0;
  for (const auto& s : d.sequences) {
    for (std::size_t i = 0; i < s.events.size(); ++i) {
      if (s.events[i] == event) {
        sum += i;
        ++count;
        break;
      }
    }
  }
  if (count == 0) return std::nullopt;
  return static_cast<double>(sum) / static_cast<double>(count);
}

}  // namespace seqsum
