#include "seqsum/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <unistd.h>

#include "seqsum/coreflow.hpp"
#include "seqsum/errors.hpp"
#include "seqsum/sententree.hpp"
#include "seqsum/synopsis.hpp"

namespace seqsum {
namespace {

long current_rss_bytes() {
  std::ifstream statm("/proc/self/statm");
  long pages_total = 0, pages_resident = 0;
  if (!(statm >> pages_total >> pages_resident)) return 0;
  return pages_resident * ::sysconf(_SC_PAGESIZE);
}

// Polls resident-set size on a 10 ms cadence while a measured run executes.
// Sampling can only miss short-lived spikes, so the result is a lower bound.
class RssSampler {
 public:
  void start() {
    stop_flag_.store(false);
    peak_.store(current_rss_bytes());
    worker_ = std::thread([this] {
      while (!stop_flag_.load()) {
        observe(current_rss_bytes());
        std::this_thread::sleep_for(std::chrono::milliseconds(10));
      }
    });
  }

  void observe(long rss) {
    long prev = peak_.load();
    while (rss > prev && !peak_.compare_exchange_weak(prev, rss)) {
    }
  }

  long stop() {
    stop_flag_.store(true);
    if (worker_.joinable()) worker_.join();
    return peak_.load();
  }

 private:
  std::atomic<bool> stop_flag_{false};
  std::atomic<long> peak_{0};
  std::thread worker_;
};

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  double m = n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
  // Quantize back to the 1 us sampling resolution so the CSV's three decimal
  // places (milliseconds) reproduce the value exactly on re-parse.
  return std::round(m * 1000.0) / 1000.0;
}

std::string fmt(double v, const char* spec) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

Summary mine_for(const std::string& technique, const Dataset& d, double level) {
  if (technique == "coreflow") return mine_coreflow(d, MinSupport{level});
  if (technique == "sententree") return mine_sententree(d, MinSupport{level});
  if (technique == "synopsis") return mine_synopsis(d, SynopsisParams::for_dataset(level, d));
  throw std::invalid_argument("unknown technique: " + technique);
}

}  // namespace

std::vector<BenchRecord> run_sweep(const std::vector<Dataset>& datasets,
                                   const GranularityGrid& grid, int repeats) {
  if (repeats < 1) throw std::invalid_argument("run_sweep: repeats must be >= 1");
  if (grid.min_support_levels.empty() || grid.lambda_levels.empty())
    throw std::invalid_argument("run_sweep: grid must have levels");

  std::vector<BenchRecord> out;
  for (const auto& d : datasets) {
    for (const char* technique : {"coreflow", "sententree", "synopsis"}) {
      const auto& levels =
          std::string(technique) == "synopsis" ? grid.lambda_levels : grid.min_support_levels;
      for (double level : levels) {
        BenchRecord rec;
        rec.technique = technique;
        rec.dataset = d.name;
        rec.granularity = level;

        long baseline = current_rss_bytes();
        RssSampler sampler;
        sampler.start();
        std::vector<double> walls;
        try {
          for (int r = 0; r < repeats; ++r) {
            auto t0 = std::chrono::steady_clock::now();
            Summary s = mine_for(technique, d, level);
            auto t1 = std::chrono::steady_clock::now();
            sampler.observe(current_rss_bytes());
            auto us = std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count();
            walls.push_back(static_cast<double>(us) / 1000.0);
            if (r == repeats - 1) {
              rec.nodes = static_cast<long>(s.nodes.size());
              rec.edges = static_cast<long>(s.edges.size());
              rec.patterns = static_cast<long>(s.patterns.size());
            }
          }
          rec.wall_time_ms = median(walls);
          rec.peak_memory_bytes = std::max(0L, sampler.stop() - baseline);
        } catch (const std::exception&) {
          sampler.stop();
          rec = BenchRecord{technique, d.name, level, 0.0, 0, 0, 0, 0, false};
        }
        out.push_back(std::move(rec));
      }
    }
  }
  return out;
}

std::string records_to_csv(const std::vector<BenchRecord>& records) {
  std::string csv = "technique,dataset,granularity,wall_time_ms,peak_memory_bytes,nodes,edges,patterns,status\n";
  for (const auto& r : records) {
    csv += r.technique + "," + r.dataset + "," + fmt(r.granularity, "%.2f") + "," +
           fmt(r.wall_time_ms, "%.3f") + "," + std::to_string(r.peak_memory_bytes) + "," +
           std::to_string(r.nodes) + "," + std::to_string(r.edges) + "," +
           std::to_string(r.patterns) + "," + (r.ok ? "ok" : "failed") + "\n";
  }
  return csv;
}

std::vector<BenchRecord> records_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) ||
      line != "technique,dataset,granularity,wall_time_ms,peak_memory_bytes,nodes,edges,patterns,status")
    throw ParseError("line 1: bad or missing benchmark CSV header", 1);

  std::vector<BenchRecord> out;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i)
      if (i == line.size() || line[i] == ',') {
        f.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    if (f.size() != 9)
      throw ParseError("line " + std::to_string(line_no) + ": expected 9 fields, found " +
                           std::to_string(f.size()),
                       line_no);
    BenchRecord r;
    try {
      r.technique = f[0];
      r.dataset = f[1];
      r.granularity = std::stod(f[2]);
      r.wall_time_ms = std::stod(f[3]);
      r.peak_memory_bytes = std::stol(f[4]);
      r.nodes = std::stol(f[5]);
      r.edges = std::stol(f[6]);
      r.patterns = std::stol(f[7]);
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(line_no) + ": malformed numeric field", line_no);
    }
    if (f[8] == "ok")
      r.ok = true;
    else if (f[8] == "failed")
      r.ok = false;
    else
      throw ParseError("line " + std::to_string(line_no) + ": status must be ok or failed",
                       line_no);
    out.push_back(std::move(r));
  }
  return out;
}

BenchReport emit_report(const std::vector<BenchRecord>& records) {
  if (records.empty()) throw std::invalid_argument("emit_report: no records");

  BenchReport report;
  report.csv = records_to_csv(records);

  std::vector<std::string> dataset_order;
  for (const auto& r : records)
    if (std::find(dataset_order.begin(), dataset_order.end(), r.dataset) == dataset_order.end())
      dataset_order.push_back(r.dataset);

  const std::vector<std::pair<std::string, std::string>> series = {
      {"coreflow", "#4e79a7"}, {"sententree", "#f28e2b"}, {"synopsis", "#e15759"}};

  const double panel_w = 300, panel_h = 150, left = 45, row_title = 18, row_gap = 34;
  const double panel_gap = 60;
  const double width = left + panel_w + panel_gap + panel_w + 20;
  const double legend_h = 22;
  const double row_h = row_title + panel_h + row_gap;
  const double height = legend_h + row_h * static_cast<double>(dataset_order.size());

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         fmt(width, "%.2f") + "\" height=\"" + fmt(height, "%.2f") + "\">\n";
  svg += "  <rect x=\"0\" y=\"0\" width=\"" + fmt(width, "%.2f") + "\" height=\"" +
         fmt(height, "%.2f") + "\" fill=\"#ffffff\"/>\n";

  double lx = left;
  for (const auto& [name, color] : series) {
    svg += "  <rect x=\"" + fmt(lx, "%.2f") + "\" y=\"6\" width=\"10\" height=\"10\" fill=\"" +
           color + "\"/>\n";
    svg += "  <text x=\"" + fmt(lx + 14, "%.2f") +
           "\" y=\"15\" font-family=\"Helvetica, Arial, sans-serif\" font-size=\"11\">" + name +
           "</text>\n";
    lx += 110;
  }

  auto log_floor = [](double v) { return std::log10(std::max(v, 1.0)); };

  for (std::size_t di = 0; di < dataset_order.size(); ++di) {
    const std::string& ds = dataset_order[di];
    double row_y = legend_h + row_h * static_cast<double>(di);
    svg += "  <text x=\"" + fmt(left, "%.2f") + "\" y=\"" + fmt(row_y + 12, "%.2f") +
           "\" font-family=\"Helvetica, Arial, sans-serif\" font-size=\"12\" font-weight=\"bold\">" +
           ds + "</text>\n";

    for (int panel = 0; panel < 2; ++panel) {
      double px = left + (panel_w + panel_gap) * panel;
      double py = row_y + row_title;
      const char* title = panel == 0 ? "wall time (ms, log)" : "peak memory (bytes, log)";

      // Gather the panel's values to scale the log axis.
      double lo = 1e300, hi = -1e300;
      for (const auto& r : records) {
        if (r.dataset != ds || !r.ok) continue;
        double v = log_floor(panel == 0 ? r.wall_time_ms
                                        : static_cast<double>(r.peak_memory_bytes));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      if (lo > hi) {
        lo = 0;
        hi = 1;
      }
      if (hi - lo < 1e-9) hi = lo + 1.0;

      svg += "  <rect x=\"" + fmt(px, "%.2f") + "\" y=\"" + fmt(py, "%.2f") + "\" width=\"" +
             fmt(panel_w, "%.2f") + "\" height=\"" + fmt(panel_h, "%.2f") +
             "\" fill=\"none\" stroke=\"#cccccc\"/>\n";
      svg += "  <text x=\"" + fmt(px, "%.2f") + "\" y=\"" + fmt(py - 4, "%.2f") +
             "\" font-family=\"Helvetica, Arial, sans-serif\" font-size=\"10\" fill=\"#555555\">" +
             title + "</text>\n";

      for (const auto& [tech, color] : series) {
        std::vector<double> vals;
        for (const auto& r : records)
          if (r.dataset == ds && r.technique == tech && r.ok)
            vals.push_back(panel == 0 ? r.wall_time_ms
                                      : static_cast<double>(r.peak_memory_bytes));
        if (vals.empty()) continue;
        std::string pts;
        for (std::size_t i = 0; i < vals.size(); ++i) {
          double x = px + (vals.size() > 1
                               ? panel_w * static_cast<double>(i) /
                                     static_cast<double>(vals.size() - 1)
                               : panel_w / 2.0);
          double y = py + panel_h - panel_h * (log_floor(vals[i]) - lo) / (hi - lo);
          pts += (i ? " " : "") + fmt(x, "%.2f") + "," + fmt(y, "%.2f");
        }
        svg += "  <polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color +
               "\" stroke-width=\"1.5\"/>\n";
      }
      svg += "  <text x=\"" + fmt(px + panel_w / 2, "%.2f") + "\" y=\"" +
             fmt(py + panel_h + 14, "%.2f") +
             "\" text-anchor=\"middle\" font-family=\"Helvetica, Arial, sans-serif\" font-size=\"10\" fill=\"#555555\">granularity (finer to coarser)</text>\n";
    }
  }
  svg += "</svg>\n";
  report.chart_svg = svg;
  return report;
}

}  // namespace seqsum
