/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "oodseg/raster.hpp"
#include "oodseg/tiling.hpp"

namespace oodseg {

// The simulated model detects an object inside a patch of an N-patch grid
// when (object & patch area) / (patch area) lies in [lo, hi].
struct DetectionBand {
  std::size_t n_patches = 1;
  double lo = 0.0;
  double hi = 1.0;

  friend bool operator==(const DetectionBand&, const DetectionBand&) = default;
};

inline constexpr float kDetectedConfidence = 0.9f;
inline constexpr float kMissedConfidence = 0.5f;
inline constexpr float kBackgroundConfidence = 0.1f;
inline constexpr float kRoadProbability = 0.9f;

struct SceneConfig {
  std::uint64_t seed = 7;
  std::size_t height = 256;
  std::size_t width = 512;
  std::size_t n_objects = 4;
  std::size_t min_size = 6;   // object side length range, pixels
  std::size_t max_size = 64;
  std::vector<DetectionBand> profile;
  double noise_sigma = 0.0;
  std::size_t num_classes = 19;
  std::size_t road_index = 0;
  std::size_t ignore_border = 0;  // IGNORE band width along the image edge

  // Throws BadConfig.
  void validate() const;
  const DetectionBand& band_for(std::size_t n_patches) const;

  friend bool operator==(const SceneConfig&, const SceneConfig&) = default;
};

// 256x512 scenes, grids 16 and 64 with bands [0.05,1] and [0.005,0.25].
SceneConfig default_scene_config();
// Small objects only the 64-grid detects and large objects only the 16-grid
// detects (disjoint bands), with noise_sigma 0.1.
SceneConfig mixed_size_scene_config();

// `key = value` lines; `band = <N>:<lo>:<hi>` may repeat. Unknown keys are
// BadConfig. Keys not given keep their default_scene_config() value, except
// that any `band` line replaces the whole default profile.
SceneConfig parse_scene_config(std::string_view text);
std::string format_scene_config(const SceneConfig& config);

struct SyntheticObject {
  enum class Shape { Rectangle, Ellipse };

  Shape shape = Shape::Rectangle;
  Rect box;
  std::size_t area = 0;
};

struct SyntheticScene {
  LabelMask gt;
  ProbabilityVolume probs;
  Image8 image;
  std::vector<SyntheticObject> objects;
  // Per pixel: 0 for background, i + 1 for objects[i].
  std::vector<std::uint32_t> object_map;
};

// Rectangles and ellipses on an in-distribution background, separated by at
// least one pixel so they stay distinct under 8-connectivity. Scene `index`
// of a dataset draws from its own sub-stream of cfg.seed. Throws
// PlacementFailure when an object cannot be placed in 1000 attempts.
SyntheticScene generate_scene(const SceneConfig& cfg, std::size_t index = 0);

// Size-band model: per patch, pixels of an object whose coverage ratio lies in
// the grid's band get 0.9, other object pixels 0.5, everything else 0.1;
// then Gaussian noise of std noise_sigma, clamped to [0,1].
RasterF32 simulate_confidence(const SyntheticScene& scene, const PatchGrid& grid,
                              const SceneConfig& cfg, std::size_t index = 0);

// Background: p(road) = 0.9, remaining mass spread uniformly. OOD: uniform.
ProbabilityVolume simulate_probs(const SyntheticScene& scene, const SceneConfig& cfg);

std::vector<std::string> synthetic_class_names(const SceneConfig& cfg);

}  // namespace oodseg
