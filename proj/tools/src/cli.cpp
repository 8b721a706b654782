/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "oodseg_cli/cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "oodseg/error.hpp"
#include "oodseg/fs.hpp"
#include "oodseg/parallel.hpp"
#include "oodseg/png_io.hpp"
#include "oodseg/report.hpp"
#include "oodseg/tiling.hpp"
#include "oodseg_cli/dataset.hpp"

namespace oodseg::cli {

namespace {

// Raised for flag combinations CLI11 cannot express; reported like a parse
// error (exit 2).
struct UsageError {
  CLI::App* app;
  std::string message;
};

std::string format_fraction(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

void print_summary(const EvalReport& r, std::ostream& out) {
  out << "images=" << r.images << " auprc=" << format_fraction(r.auprc)
      << " fpr95=" << format_fraction(r.fpr95) << " mean_siou=" << format_fraction(r.mean_siou)
      << " mean_ppv=" << format_fraction(r.mean_ppv) << " mean_f1=" << format_fraction(r.mean_f1);
  if (r.no_predicted_segments) out << " (no predicted segments)";
  out << '\n';
}

struct TileArgs {
  std::string image;
  std::vector<std::size_t> grids;
  std::vector<std::string> schemes;
  std::string schedule;
  std::string out_dir;
  std::string image_id;
  std::string resize = "reject";
};

struct InferArgs {
  std::string tiles;
  std::string model = "brightness";
};

struct AggregateArgs {
  std::string schedule;
  std::string maps;
  std::string out;
};

struct FuseArgs {
  std::string conf;
  std::string probs;
  std::string kind;
  std::optional<std::size_t> road_index;
  std::string out;
};

struct EvalArgs {
  std::string scores;
  std::string gt;
  double binarize = kDefaultBinarizeAt;
  std::string out;
  std::string csv;
  std::string label;
  int connectivity = 8;
};

struct SynthArgs {
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string config;
  std::string preset = "default";
  std::size_t scenes = 10;
  std::optional<double> noise;
};

struct PipelineArgs {
  std::string config;
};

struct ReportArgs {
  std::vector<std::string> files;
  std::string csv;
};

int cmd_tile(const TileArgs& a, CLI::App* sub, std::ostream& out) {
  std::vector<ScaleSource> sources;
  if (!a.schedule.empty()) {
    for (const auto& s : read_schedule(a.schedule).sources()) sources.push_back(s);
  }
  for (auto n : a.grids) sources.push_back(ScaleSource::grid(n));
  for (const auto& s : a.schemes) sources.push_back(ScaleSource::of_scheme(parse_scheme_kind(s)));
  if (sources.empty()) throw UsageError{sub, "one of --grid, --scheme or --schedule is required"};
  const Image8 image = read_image(a.image);
  const std::string id = a.image_id.empty() ? fs::path(a.image).stem().string() : a.image_id;
  const auto manifests = tile_image(image, id, sources, parse_resize_mode(a.resize), a.out_dir);
  for (std::size_t i = 0; i < sources.size(); ++i) {
    out << sources[i].tag() << ": " << manifests[i].entries.size() << " patches\n";
  }
  return kExitOk;
}

int cmd_infer(const InferArgs& a, std::ostream& out) {
  const BrightnessModel model;
  out << infer_directory(a.tiles, model) << " patch maps written\n";
  return kExitOk;
}

int cmd_aggregate(const AggregateArgs& a) {
  write_cmap(aggregate_directory(a.maps, read_schedule(a.schedule)), a.out);
  return kExitOk;
}

int cmd_fuse(const FuseArgs& a) {
  const UncertaintyKind kind = a.kind == "road" ? UncertaintyKind::Road : UncertaintyKind::Entropy;
  const RasterF32 conf = read_cmap(a.conf);
  const NamedVolume volume = read_probability_volume(a.probs);
  write_cmap(fuse_with_volume(conf, volume, kind, a.road_index), a.out);
  return kExitOk;
}

int cmd_eval(const EvalArgs& a, std::size_t threads, std::ostream& out) {
  EvalConfig config;
  config.binarize_at = a.binarize;
  config.connectivity = a.connectivity == 4 ? Connectivity::Four : Connectivity::Eight;
  config.threads = threads;
  const EvalReport report = evaluate_directories(a.scores, a.gt, config, a.label);
  write_report(report, a.out);
  if (!a.csv.empty()) write_file_atomic(a.csv, per_threshold_csv(report));
  print_summary(report, out);
  return kExitOk;
}

int cmd_synth(const SynthArgs& a, std::size_t threads, std::ostream& out) {
  SceneConfig config;
  if (!a.config.empty()) {
    config = parse_scene_config(read_file_text(a.config));
  } else {
    config = a.preset == "mixed" ? mixed_size_scene_config() : default_scene_config();
  }
  if (a.seed) config.seed = *a.seed;
  if (a.noise) config.noise_sigma = *a.noise;
  const auto ids = write_synthetic_dataset(config, a.scenes, a.out_dir, threads);
  out << ids.size() << " scenes written to " << a.out_dir << '\n';
  return kExitOk;
}

int cmd_pipeline(const PipelineArgs& a, bool threads_given, std::size_t threads,
                 std::ostream& out) {
  const fs::path path = a.config;
  PipelineConfig cfg = parse_pipeline_config(read_file_text(path), path.parent_path());
  if (threads_given) cfg.threads = threads;
  print_summary(run_pipeline(cfg), out);
  return kExitOk;
}

int cmd_report(const ReportArgs& a, std::ostream& out) {
  std::vector<EvalReport> reports;
  for (const auto& f : a.files) {
    reports.push_back(read_report(f));
    if (reports.back().label.empty()) reports.back().label = fs::path(f).stem().string();
  }
  const ComparisonTable table = compare_reports(reports);
  out << table.text;
  if (!a.csv.empty()) write_file_atomic(a.csv, table.csv);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-scale OOD segmentation: tiling, aggregation, fusion and evaluation",
               "oodseg"};
  app.require_subcommand(1);
  std::size_t threads = default_thread_count();
  auto* threads_opt = app.add_option("--threads", threads, "Worker threads (default: $OODSEG_THREADS or 1)")
                          ->check(CLI::PositiveNumber);

  TileArgs tile;
  auto* tile_cmd = app.add_subcommand("tile", "Cut an image into patches and write a manifest");
  tile_cmd->add_option("--image", tile.image, "Input PNG")->required()->check(CLI::ExistingFile);
  tile_cmd->add_option("--grid", tile.grids, "Uniform grid patch count N (repeatable)");
  tile_cmd->add_option("--scheme", tile.schemes, "Non-uniform scheme A, B or C (repeatable)")
      ->check(CLI::IsMember({"A", "B", "C"}));
  tile_cmd->add_option("--schedule", tile.schedule, "Tile every scale of a schedule file")
      ->check(CLI::ExistingFile);
  tile_cmd->add_option("--out-dir", tile.out_dir, "Output directory (one subdirectory per scale)")
      ->required();
  tile_cmd->add_option("--image-id", tile.image_id, "Patch id prefix (default: image stem)");
  tile_cmd->add_option("--resize", tile.resize, "Policy for non-divisible sizes")
      ->check(CLI::IsMember({"reject", "nearest", "bilinear"}));

  InferArgs infer;
  auto* infer_cmd =
      app.add_subcommand("infer", "Run the built-in mock model over a tiled scale directory");
  infer_cmd->add_option("--tiles", infer.tiles, "Directory holding manifest.tsv and patch PNGs")
      ->required()
      ->check(CLI::ExistingDirectory);
  infer_cmd->add_option("--model", infer.model, "Mock model")->check(CLI::IsMember({"brightness"}));

  AggregateArgs agg;
  auto* agg_cmd = app.add_subcommand("aggregate", "Combine per-scale patch maps into one map");
  agg_cmd->add_option("--schedule", agg.schedule, "Schedule file")->required()->check(CLI::ExistingFile);
  agg_cmd->add_option("--maps", agg.maps, "Directory with one subdirectory per scale")
      ->required()
      ->check(CLI::ExistingDirectory);
  agg_cmd->add_option("--out", agg.out, "Output CMAP")->required();

  FuseArgs fuse_args;
  auto* fuse_cmd = app.add_subcommand("fuse", "Multiply a confidence map by an uncertainty map");
  fuse_cmd->add_option("--conf", fuse_args.conf, "Confidence CMAP")->required()->check(CLI::ExistingFile);
  fuse_cmd->add_option("--probs", fuse_args.probs, "Probability volume directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  fuse_cmd->add_option("--kind", fuse_args.kind, "entropy or road")
      ->required()
      ->check(CLI::IsMember({"entropy", "road"}));
  fuse_cmd->add_option("--road-index", fuse_args.road_index,
                       "Road channel when classes.txt has no 'road' entry");
  fuse_cmd->add_option("--out", fuse_args.out, "Output CMAP")->required();

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score maps against ground-truth masks");
  eval_cmd->add_option("--scores", eval.scores, "Directory of <id>.cmap score maps")
      ->required()
      ->check(CLI::ExistingDirectory);
  eval_cmd->add_option("--gt", eval.gt, "Directory of <id>.png label masks")
      ->required()
      ->check(CLI::ExistingDirectory);
  eval_cmd->add_option("--binarize", eval.binarize, "Score threshold for segment metrics")
      ->check(CLI::Range(0.0, 1.0));
  eval_cmd->add_option("--out", eval.out, "Report JSON")->required();
  eval_cmd->add_option("--csv", eval.csv, "Per-threshold CSV");
  eval_cmd->add_option("--label", eval.label, "Report label");
  eval_cmd->add_option("--connectivity", eval.connectivity, "4 or 8")
      ->check(CLI::IsMember({4, 8}));

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic benchmark");
  synth_cmd->add_option("--seed", synth.seed, "Master seed (overrides the config)");
  synth_cmd->add_option("--out-dir", synth.out_dir, "Output directory")->required();
  synth_cmd->add_option("--config", synth.config, "Scene config file")->check(CLI::ExistingFile);
  synth_cmd->add_option("--preset", synth.preset, "Built-in config when --config is absent")
      ->check(CLI::IsMember({"default", "mixed"}));
  synth_cmd->add_option("--scenes", synth.scenes, "Number of scenes")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--noise", synth.noise, "Confidence noise sigma")
      ->check(CLI::NonNegativeNumber);

  PipelineArgs pipe;
  auto* pipe_cmd = app.add_subcommand("pipeline", "aggregate, fuse and eval from one config file");
  pipe_cmd->add_option("--config", pipe.config, "Pipeline config")->required()->check(CLI::ExistingFile);

  ReportArgs rep;
  auto* rep_cmd = app.add_subcommand("report", "Compare evaluation reports");
  rep_cmd->add_option("files", rep.files, "Report JSON files")->required()->check(CLI::ExistingFile);
  rep_cmd->add_option("--csv", rep.csv, "Also write the table as CSV");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  const auto usage = [&](CLI::App* which, const std::string& message) {
    err << "oodseg: " << message << "\n\n" << which->help();
    return kExitUsage;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    CLI::App* which = &app;
    for (auto* sub : app.get_subcommands()) which = sub;
    out << which->help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    CLI::App* which = &app;
    for (auto* sub : app.get_subcommands()) which = sub;
    return usage(which, e.what());
  }

  try {
    if (*tile_cmd) return cmd_tile(tile, tile_cmd, out);
    if (*infer_cmd) return cmd_infer(infer, out);
    if (*agg_cmd) return cmd_aggregate(agg);
    if (*fuse_cmd) return cmd_fuse(fuse_args);
    if (*eval_cmd) return cmd_eval(eval, threads, out);
    if (*synth_cmd) return cmd_synth(synth, threads, out);
    if (*pipe_cmd) return cmd_pipeline(pipe, threads_opt->count() > 0, threads, out);
    if (*rep_cmd) return cmd_report(rep, out);
  } catch (const UsageError& e) {
    return usage(e.app, e.message);
  } catch (const Error& e) {
    // what() already starts with the code name.
    err << "oodseg: error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "oodseg: error: " << e.what() << '\n';
    return kExitFailure;
  }
  return usage(&app, "no subcommand given");
}

}  // namespace oodseg::cli
