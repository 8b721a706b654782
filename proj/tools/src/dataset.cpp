/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "oodseg_cli/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "oodseg/error.hpp"
#include "oodseg/fs.hpp"
#include "oodseg/parallel.hpp"
#include "oodseg/png_io.hpp"
#include "oodseg/report.hpp"
#include "oodseg/tiling.hpp"

namespace oodseg::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  return s;
}

std::vector<std::string> gt_ids(const fs::path& gt_dir) {
  std::vector<std::string> ids;
  for (const auto& p : list_files(gt_dir, ".png")) ids.push_back(p.stem().string());
  if (ids.empty()) fail(ErrorCode::IoFailure, "no ground-truth PNGs in " + gt_dir.string());
  return ids;
}

fs::path require_file(const fs::path& path, const std::string& what) {
  if (!fs::exists(path)) fail(ErrorCode::IoFailure, "missing " + what + " " + path.string());
  return path;
}

}  // namespace

std::vector<PatchManifest> tile_image(const Image8& image, const std::string& image_id,
                                      std::span<const ScaleSource> sources, ResizeMode policy,
                                      const fs::path& out_dir) {
  std::vector<PatchManifest> manifests;
  for (const auto& source : sources) {
    GridPlan plan;
    const PatchScheme scheme = layout_for(source, image.size(), policy, &plan);
    const Image8 working = plan.resized() ? resize(image, plan.grid.image, plan.mode) : image;
    PatchManifest manifest = make_manifest(scheme, image_id, ".png");
    if (plan.resized()) {
      manifest.original_size = plan.original;
      manifest.resize = plan.mode;
    }
    const fs::path dir = out_dir / source.tag();
    fs::create_directories(dir);
    const auto patches = slice(working, scheme);
    for (std::size_t i = 0; i < patches.size(); ++i) {
      write_image(patches[i], dir / manifest.entries[i].path);
    }
    write_manifest(manifest, dir / kManifestFileName);
    manifests.push_back(std::move(manifest));
  }
  return manifests;
}

std::size_t infer_directory(const fs::path& scale_dir, const ModelAdapter& model) {
  const PatchManifest manifest = read_manifest(scale_dir / kManifestFileName);
  for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
    const auto& e = manifest.entries[i];
    const Image8 patch = read_image(require_file(scale_dir / e.path, "patch"));
    PatchContext ctx;
    ctx.rect = e.rect;
    ctx.image = manifest.image_size;
    ctx.index = i;
    write_cmap(model.predict(patch, ctx), scale_dir / fs::path(e.path).stem().concat(".cmap"));
  }
  return manifest.entries.size();
}

RasterF32 fuse_with_volume(const RasterF32& conf, const NamedVolume& volume, UncertaintyKind kind,
                           std::optional<std::size_t> road_index) {
  ClassIndex road;
  if (kind == UncertaintyKind::Road) road = resolve_road_class(volume.class_names, road_index);
  return fuse(conf, uncertainty_map(volume.probs, kind, road));
}

EvalReport evaluate_directories(const fs::path& scores_dir, const fs::path& gt_dir,
                                const EvalConfig& config, const std::string& label) {
  const auto ids = gt_ids(gt_dir);
  for (const auto& id : ids) require_file(scores_dir / (id + ".cmap"), "score map");
  EvalReport report = evaluate_dataset(
      ids.size(),
      [&](std::size_t i) {
        return EvalPair{read_cmap(scores_dir / (ids[i] + ".cmap")),
                        read_label_mask(gt_dir / (ids[i] + ".png"))};
      },
      config);
  report.label = label;
  return report;
}

std::string scene_id(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "scene_%03zu", index);
  return buf;
}

std::vector<std::string> write_synthetic_dataset(const SceneConfig& config, std::size_t scenes,
                                                 const fs::path& out_dir, std::size_t threads) {
  config.validate();
  std::vector<ScaleSource> sources;
  for (const auto& band : config.profile) sources.push_back(ScaleSource::grid(band.n_patches));
  const ScaleSchedule schedule = ScaleSchedule::uniform(sources);

  for (const char* sub : {"images", "gt", "probs", "maps", "scores"}) {
    fs::create_directories(out_dir / sub);
  }
  write_file_atomic(out_dir / "scene.cfg", format_scene_config(config));
  write_schedule(schedule, out_dir / "schedule.txt");

  std::vector<std::string> ids(scenes);
  for (std::size_t i = 0; i < scenes; ++i) ids[i] = scene_id(i);
  const auto class_names = synthetic_class_names(config);

  parallel_for(scenes, threads, [&](std::size_t i) {
    const std::string& id = ids[i];
    const SyntheticScene scene = generate_scene(config, i);
    write_image(scene.image, out_dir / "images" / (id + ".png"));
    write_label_mask(scene.gt, out_dir / "gt" / (id + ".png"));
    write_probability_volume({scene.probs, class_names}, out_dir / "probs" / id);

    std::vector<RasterF32> maps;
    for (const auto& entry : schedule.entries()) {
      const GridPlan plan =
          make_uniform_grid(config.height, config.width, entry.source.n_patches);
      const RasterF32 conf = simulate_confidence(scene, plan.grid, config, i);
      const PatchScheme layout = to_scheme(plan.grid);
      const PatchManifest manifest = make_manifest(layout, id, ".png");
      const fs::path dir = out_dir / "maps" / id / entry.source.tag();
      fs::create_directories(dir);
      const auto image_patches = slice(scene.image, layout);
      const auto conf_patches = slice(conf, layout);
      for (std::size_t k = 0; k < layout.rects.size(); ++k) {
        write_image(image_patches[k], dir / manifest.entries[k].path);
        write_cmap(conf_patches[k], dir / (manifest.entries[k].patch_id + ".cmap"));
      }
      write_manifest(manifest, dir / kManifestFileName);
      maps.push_back(conf);
    }
    write_cmap(combine_scales(maps, schedule.weights()), out_dir / "scores" / (id + ".cmap"));
  });
  return ids;
}

void PipelineConfig::validate() const {
  const auto bad = [](const std::string& why) { fail(ErrorCode::BadConfig, "pipeline: " + why); };
  if (gt.empty()) bad("'gt' is required");
  if (schedule.empty()) bad("'schedule' is required");
  if (out_dir.empty()) bad("'out_dir' is required");
  if (model == ModelKind::Maps && maps.empty()) bad("model = maps needs 'maps'");
  if (model == ModelKind::Brightness && images.empty()) bad("model = brightness needs 'images'");
  if (fusion && probs.empty()) bad("fusion needs 'probs'");
  if (!(binarize_at >= 0.0 && binarize_at <= 1.0)) bad("binarize must lie in [0,1]");
  if (threads == 0) bad("threads must be >= 1");
  for (const fs::path* p : {&gt, &schedule}) {
    if (!fs::exists(*p)) bad("missing " + p->string());
  }
  if (model == ModelKind::Maps && !fs::exists(maps)) bad("missing " + maps.string());
  if (model == ModelKind::Brightness && !fs::exists(images)) bad("missing " + images.string());
  if (fusion && !fs::exists(probs)) bad("missing " + probs.string());
}

PipelineConfig parse_pipeline_config(std::string_view text, const fs::path& base_dir) {
  PipelineConfig cfg;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  const auto resolve = [&](std::string_view v) {
    fs::path p{std::string(v)};
    return p.is_absolute() ? p : base_dir / p;
  };
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorCode::BadConfig, "pipeline config line " + std::to_string(line_no) +
                                     ": expected key = value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto number = [&](auto& out) {
      auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
      if (ec != std::errc() || p != value.data() + value.size()) {
        fail(ErrorCode::BadConfig, "pipeline config line " + std::to_string(line_no) +
                                       ": bad number '" + std::string(value) + "'");
      }
    };
    if (key == "gt") {
      cfg.gt = resolve(value);
    } else if (key == "maps") {
      cfg.maps = resolve(value);
    } else if (key == "images") {
      cfg.images = resolve(value);
    } else if (key == "probs") {
      cfg.probs = resolve(value);
    } else if (key == "schedule") {
      cfg.schedule = resolve(value);
    } else if (key == "out_dir") {
      cfg.out_dir = resolve(value);
    } else if (key == "model") {
      if (value == "maps") {
        cfg.model = ModelKind::Maps;
      } else if (value == "brightness") {
        cfg.model = ModelKind::Brightness;
      } else {
        fail(ErrorCode::BadConfig, "model must be maps or brightness");
      }
    } else if (key == "fusion") {
      if (value == "none") {
        cfg.fusion.reset();
      } else if (value == "entropy") {
        cfg.fusion = UncertaintyKind::Entropy;
      } else if (value == "road") {
        cfg.fusion = UncertaintyKind::Road;
      } else {
        fail(ErrorCode::BadConfig, "fusion must be none, entropy or road");
      }
    } else if (key == "road_index") {
      std::size_t idx = 0;
      number(idx);
      cfg.road_index = idx;
    } else if (key == "binarize") {
      number(cfg.binarize_at);
    } else if (key == "resize") {
      cfg.resize = parse_resize_mode(value);
    } else if (key == "connectivity") {
      int c = 0;
      number(c);
      if (c != 4 && c != 8) fail(ErrorCode::BadConfig, "connectivity must be 4 or 8");
      cfg.connectivity = c == 4 ? Connectivity::Four : Connectivity::Eight;
    } else if (key == "threads") {
      number(cfg.threads);
    } else if (key == "label") {
      cfg.label = std::string(value);
    } else {
      fail(ErrorCode::BadConfig, "unknown pipeline key '" + std::string(key) + "'");
    }
  }
  return cfg;
}

EvalReport run_pipeline(const PipelineConfig& cfg) {
  cfg.validate();
  const ScaleSchedule schedule = read_schedule(cfg.schedule);
  const auto ids = gt_ids(cfg.gt);
  const fs::path scores_dir = cfg.out_dir / "scores";
  const fs::path fused_dir = cfg.out_dir / "fused";
  fs::create_directories(scores_dir);
  if (cfg.fusion) fs::create_directories(fused_dir);

  const BrightnessModel brightness;
  parallel_for(ids.size(), cfg.threads, [&](std::size_t i) {
    const std::string& id = ids[i];
    RasterF32 conf;
    if (cfg.model == ModelKind::Maps) {
      conf = aggregate_directory(cfg.maps / id, schedule);
    } else {
      const Image8 image = read_image(require_file(cfg.images / (id + ".png"), "image"));
      conf = run_schedule(image, schedule, brightness, cfg.resize);
    }
    write_cmap(conf, scores_dir / (id + ".cmap"));
    if (cfg.fusion) {
      const NamedVolume volume = read_probability_volume(cfg.probs / id);
      write_cmap(fuse_with_volume(conf, volume, *cfg.fusion, cfg.road_index),
                 fused_dir / (id + ".cmap"));
    }
  });

  EvalConfig eval;
  eval.binarize_at = cfg.binarize_at;
  eval.connectivity = cfg.connectivity;
  eval.threads = cfg.threads;
  EvalReport report =
      evaluate_directories(cfg.fusion ? fused_dir : scores_dir, cfg.gt, eval, cfg.label);
  write_report(report, cfg.out_dir / "report.json");
  return report;
}

}  // namespace oodseg::cli
