#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include "seqsum/bench.hpp"
#include "seqsum/coreflow.hpp"
#include "seqsum/dataset.hpp"
#include "seqsum/errors.hpp"
#include "seqsum/insight.hpp"
#include "seqsum/layout.hpp"
#include "seqsum/render.hpp"
#include "seqsum/sententree.hpp"
#include "seqsum/summary.hpp"
#include "seqsum/synopsis.hpp"
#include "seqsum/synthetic.hpp"

namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw seqsum::ParseError("cannot open " + path, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Write via a sibling temp file + rename so readers never see partial output.
void write_atomic(const std::string& path, const std::string& content) {
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw seqsum::ParseError("cannot write " + tmp.string(), 0);
    out << content;
    if (!out.flush()) throw seqsum::ParseError("short write to " + tmp.string(), 0);
  }
  fs::rename(tmp, target);
}

struct MineArgs {
  std::string technique;
  double min_support = -1.0;
  double lambda = -1.0;
  bool has_min_support = false;
  bool has_lambda = false;
  std::string input;
  std::string output;
  int node_cap = 50;
};

void run_mine(const MineArgs& a) {
  if (a.technique == "synopsis") {
    if (a.has_min_support)
      throw seqsum::SchemaError(
          "synopsis is tuned with --lambda (description-length weight), not --min-support");
    if (!a.has_lambda) throw seqsum::SchemaError("synopsis requires --lambda");
  } else {
    if (a.has_lambda)
      throw seqsum::SchemaError(a.technique + " is tuned with --min-support, not --lambda");
    if (!a.has_min_support) throw seqsum::SchemaError(a.technique + " requires --min-support");
  }

  seqsum::Dataset d = seqsum::load_dataset(a.input);
  seqsum::Summary s;
  if (a.technique == "coreflow") {
    s = seqsum::mine_coreflow(d, seqsum::MinSupport{a.min_support});
  } else if (a.technique == "sententree") {
    seqsum::SentenTreeOptions opts;
    opts.node_cap = a.node_cap;
    s = seqsum::mine_sententree(d, seqsum::MinSupport{a.min_support}, opts);
  } else {
    s = seqsum::mine_synopsis(d, seqsum::SynopsisParams::for_dataset(a.lambda, d));
  }
  write_atomic(a.output, seqsum::summary_to_json(s));
}

void run_stats(const std::string& input) {
  seqsum::Dataset d = seqsum::load_dataset(input);
  seqsum::DatasetStats st = seqsum::stats(d);
  std::printf("name: %s\n", d.name.c_str());
  std::printf("sequences: %zu\n", st.num_sequences);
  std::printf("events: %zu\n", st.total_events);
  std::printf("unique_event_types: %zu\n", st.unique_events);
  std::printf("min_length: %zu\n", st.min_length);
  std::printf("max_length: %zu\n", st.max_length);
  std::printf("median_length: %g\n", st.median_length);
}

void run_render(const std::string& input, const std::string& output,
                const seqsum::LayoutConfig& cfg, double font_size) {
  seqsum::Summary s = seqsum::summary_from_json(slurp(input));
  seqsum::LayoutResult l = seqsum::layout_summary(s, cfg);
  seqsum::Style style;
  style.font_size = font_size;
  write_atomic(output, seqsum::render_svg(s, l, cfg, style));
}

void run_eval(const std::string& summary_path, const std::string& insights_path,
              const std::string& report_path) {
  seqsum::Summary s = seqsum::summary_from_json(slurp(summary_path));
  auto queries = seqsum::insights_from_json(slurp(insights_path));
  seqsum::ScoreReport r = seqsum::score_report(s, queries);
  write_atomic(report_path, seqsum::report_to_json(r, queries));
  if (r.fraction_contains)
    std::printf("containsKeyEvents: %.3f  numbersMatch: %.3f  (n=%zu)\n", *r.fraction_contains,
                *r.fraction_numbers_match, queries.size());
  else
    std::printf("no queries\n");
}

void run_bench(const std::string& datasets_dir, int repeats, unsigned seed,
               const std::string& out_dir) {
  std::vector<seqsum::Dataset> datasets;
  if (datasets_dir.empty()) {
    auto shapes = seqsum::reference_shapes();
    for (std::size_t i = 0; i < shapes.size(); ++i)
      datasets.push_back(seqsum::make_synthetic(shapes[i], seed + static_cast<unsigned>(i)));
  } else {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(datasets_dir)) {
      if (!entry.is_regular_file()) continue;
      auto ext = entry.path().extension().string();
      if (ext == ".csv" || ext == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty())
      throw seqsum::SchemaError("no .csv or .json datasets under " + datasets_dir);
    for (const auto& f : files) datasets.push_back(seqsum::load_dataset(f.string()));
  }

  auto records = seqsum::run_sweep(datasets, seqsum::GranularityGrid{}, repeats);
  seqsum::BenchReport report = seqsum::emit_report(records);
  fs::create_directories(out_dir);
  write_atomic((fs::path(out_dir) / "bench.csv").string(), report.csv);
  write_atomic((fs::path(out_dir) / "bench.svg").string(), report.chart_svg);
  std::printf("wrote %s and %s (%zu records)\n", (fs::path(out_dir) / "bench.csv").c_str(),
              (fs::path(out_dir) / "bench.svg").c_str(), records.size());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"event-sequence summarization toolkit"};
  app.require_subcommand(1);

  auto* stats_cmd = app.add_subcommand("stats", "print dataset statistics");
  std::string stats_input;
  stats_cmd->add_option("--input", stats_input, "dataset file (.csv or .json)")->required();

  auto* mine_cmd = app.add_subcommand("mine", "mine a summary from a dataset");
  MineArgs mine;
  mine_cmd->add_option("--technique", mine.technique, "coreflow | sententree | synopsis")
      ->required()
      ->check(CLI::IsMember({"coreflow", "sententree", "synopsis"}));
  auto* ms_opt = mine_cmd->add_option("--min-support", mine.min_support,
                                      "support threshold as a fraction of sequences");
  auto* lam_opt = mine_cmd->add_option("--lambda", mine.lambda,
                                       "description-length weight in [0,1] (synopsis)");
  mine_cmd->add_option("--input", mine.input, "dataset file")->required();
  mine_cmd->add_option("--output", mine.output, "summary JSON path")->required();
  mine_cmd->add_option("--node-cap", mine.node_cap, "growth node cap (sententree)");

  auto* render_cmd = app.add_subcommand("render", "lay out and render a summary as SVG");
  std::string render_input, render_output;
  seqsum::LayoutConfig cfg;
  double font_size = 11.0;
  render_cmd->add_option("--input", render_input, "summary JSON")->required();
  render_cmd->add_option("--output", render_output, "SVG path")->required();
  render_cmd->add_option("--node-width", cfg.node_width, "node box width, px");
  render_cmd->add_option("--node-height", cfg.node_height, "node box height, px");
  render_cmd->add_option("--horizontal-gap", cfg.horizontal_gap, "gap between siblings, px");
  render_cmd->add_option("--vertical-gap", cfg.vertical_gap, "gap between levels, px");
  render_cmd->add_option("--canvas-width", cfg.canvas_width, "canvas extent, px");
  render_cmd->add_option("--link-width-per-sequence", cfg.link_width_per_sequence,
                         "stroke px per supporting sequence");
  render_cmd->add_option("--font-size", font_size, "label font size, px");

  auto* eval_cmd = app.add_subcommand("eval", "score a summary against insight queries");
  std::string eval_summary, eval_insights, eval_report;
  eval_cmd->add_option("--summary", eval_summary, "summary JSON")->required();
  eval_cmd->add_option("--insights", eval_insights, "insight queries JSON")->required();
  eval_cmd->add_option("--report", eval_report, "report JSON output path")->required();

  auto* bench_cmd = app.add_subcommand("bench", "sweep techniques x granularities");
  std::string bench_datasets, bench_out = "bench-out";
  int bench_repeats = 3;
  unsigned bench_seed = 42;
  bench_cmd->add_option("--datasets", bench_datasets,
                        "directory of dataset files (default: built-in synthetic suite)");
  bench_cmd->add_option("--repeats", bench_repeats, "timed repeats per cell")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench_seed, "seed for the synthetic suite");
  bench_cmd->add_option("--out-dir", bench_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    mine.has_min_support = ms_opt->count() > 0;
    mine.has_lambda = lam_opt->count() > 0;
    if (stats_cmd->parsed()) run_stats(stats_input);
    if (mine_cmd->parsed()) run_mine(mine);
    if (render_cmd->parsed()) run_render(render_input, render_output, cfg, font_size);
    if (eval_cmd->parsed()) run_eval(eval_summary, eval_insights, eval_report);
    if (bench_cmd->parsed()) run_bench(bench_datasets, bench_repeats, bench_seed, bench_out);
  } catch (const seqsum::InvariantError& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 2;
  } catch (const fs::filesystem_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 2;
  }
  return 0;
}
