/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oodseg/aggregate.hpp"
#include "oodseg/components.hpp"
#include "oodseg/fusion.hpp"
#include "oodseg/metrics.hpp"
#include "oodseg/parallel.hpp"
#include "oodseg/raster_io.hpp"
#include "oodseg/synth.hpp"

namespace oodseg::cli {

namespace fs = std::filesystem;

// Writes `<out_dir>/<tag>/manifest.tsv` and one PNG per patch for every
// source. Returns the manifests in source order.
std::vector<PatchManifest> tile_image(const Image8& image, const std::string& image_id,
                                      std::span<const ScaleSource> sources, ResizeMode policy,
                                      const fs::path& out_dir);

// Stand-in for an external model: reads `<scale_dir>/manifest.tsv`, runs
// `model` on each patch PNG and writes `<patch stem>.cmap` beside it.
// Returns the number of patches written.
std::size_t infer_directory(const fs::path& scale_dir, const ModelAdapter& model);

RasterF32 fuse_with_volume(const RasterF32& conf, const NamedVolume& volume, UncertaintyKind kind,
                           std::optional<std::size_t> road_index);

// Pairs `<gt>/<id>.png` with `<scores>/<id>.cmap` for every ground-truth
// stem, in lexicographic id order.
EvalReport evaluate_directories(const fs::path& scores_dir, const fs::path& gt_dir,
                                const EvalConfig& config, const std::string& label);

std::string scene_id(std::size_t index);

// Layout under out_dir:
//   scene.cfg, schedule.txt (uniform over the profile grids)
//   images/<id>.png, gt/<id>.png, probs/<id>/{classes.txt,channel_*.cmap}
//   maps/<id>/grid_<N>/{manifest.tsv,<patch>.png,<patch>.cmap}
//   scores/<id>.cmap (uniform combination of the simulated scales)
// Returns the scene ids.
std::vector<std::string> write_synthetic_dataset(const SceneConfig& config, std::size_t scenes,
                                                 const fs::path& out_dir, std::size_t threads);

enum class ModelKind { Maps, Brightness };

struct PipelineConfig {
  fs::path gt;
  fs::path maps;    // per-image directories of external patch outputs (model = maps)
  fs::path images;  // input PNGs (model = brightness)
  fs::path probs;   // optional, needed for fusion
  fs::path schedule;
  fs::path out_dir;
  ModelKind model = ModelKind::Maps;
  std::optional<UncertaintyKind> fusion;
  std::optional<std::size_t> road_index;
  double binarize_at = kDefaultBinarizeAt;
  ResizeMode resize = ResizeMode::Reject;
  Connectivity connectivity = Connectivity::Eight;
  std::size_t threads = default_thread_count();
  std::string label;

  // Throws BadConfig.
  void validate() const;
};

// `key = value` lines. Relative paths resolve against `base_dir`.
PipelineConfig parse_pipeline_config(std::string_view text, const fs::path& base_dir);

// aggregate -> optional fuse -> eval over every image id of cfg.gt. Writes
// scores/<id>.cmap, fused/<id>.cmap (with fusion) and report.json under
// out_dir, and returns the report.
EvalReport run_pipeline(const PipelineConfig& cfg);

}  // namespace oodseg::cli
