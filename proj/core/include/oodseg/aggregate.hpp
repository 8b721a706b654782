/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oodseg/raster.hpp"
#include "oodseg/raster_io.hpp"
#include "oodseg/tiling.hpp"

namespace oodseg {

// Where one scale's confidence map comes from: a uniform N-patch grid or one
// of the mixed-size schemes. Ordering is the canonical schedule order:
// grids by ascending N, then schemes A, B, C.
struct ScaleSource {
  enum class Kind { Grid, Scheme };

  Kind kind = Kind::Grid;
  std::size_t n_patches = 1;
  SchemeKind scheme = SchemeKind::A;

  static ScaleSource grid(std::size_t n) { return {Kind::Grid, n, SchemeKind::A}; }
  static ScaleSource of_scheme(SchemeKind s) { return {Kind::Scheme, 0, s}; }

  // Directory / display name, e.g. "grid_16" or "scheme_B".
  std::string tag() const;

  friend auto operator<=>(const ScaleSource&, const ScaleSource&) = default;
};

struct ScaleEntry {
  ScaleSource source;
  double weight = 0.0;

  friend bool operator==(const ScaleEntry&, const ScaleEntry&) = default;
};

inline constexpr double kWeightSumTolerance = 1e-9;

// Ordered, validated list of (source, weight) pairs. Construction rejects
// empty schedules (ZeroScales), duplicate sources (BadConfig), and weights
// outside [0,1] or not summing to 1 within kWeightSumTolerance (BadWeights).
// A sum that is off by less than the tolerance is renormalized. Entries are
// stored in canonical source order.
class ScaleSchedule {
 public:
  explicit ScaleSchedule(std::vector<ScaleEntry> entries);

  static ScaleSchedule uniform(std::span<const ScaleSource> sources);

  std::span<const ScaleEntry> entries() const noexcept { return entries_; }
  std::vector<double> weights() const;
  std::vector<ScaleSource> sources() const;
  std::size_t size() const noexcept { return entries_.size(); }

  friend bool operator==(const ScaleSchedule&, const ScaleSchedule&) = default;

 private:
  std::vector<ScaleEntry> entries_;
};

// d copies of 1/d.
std::vector<double> uniform_weights(std::size_t d);

// Throws ZeroScales / BadWeights.
void validate_weights(std::span<const double> weights);

// Config lines are `grid:<N>:<alpha>` or `scheme:<A|B|C>:<alpha>`; blank lines
// and `#` comments are ignored.
ScaleSchedule parse_schedule(std::string_view text);
std::string format_schedule(const ScaleSchedule& schedule);
ScaleSchedule read_schedule(const std::filesystem::path& path);
void write_schedule(const ScaleSchedule& schedule, const std::filesystem::path& path);

// Pointwise weighted sum of the maps. Accumulates in double in the given
// order and rounds to float once per pixel.
RasterF32 combine_scales(std::span<const RasterF32> maps, std::span<const double> weights);

struct PatchContext {
  ScaleSource source;
  Rect rect;
  Size image;
  std::size_t index = 0;
};

// Foreground-background model run on one patch; must return a raster of the
// patch's size with values in [0,1].
class ModelAdapter {
 public:
  virtual ~ModelAdapter() = default;
  virtual RasterF32 predict(const Image8& patch, const PatchContext& context) const = 0;
};

// Dependency-free stand-in: confidence = mean channel intensity / 255.
class BrightnessModel final : public ModelAdapter {
 public:
  RasterF32 predict(const Image8& patch, const PatchContext& context) const override;
};

PatchScheme layout_for(const ScaleSource& source, Size image, ResizeMode policy,
                       GridPlan* plan = nullptr);

// Tiles the image for one source, runs the model on every patch and
// reassembles the full-frame confidence map at the original image size.
RasterF32 infer_scale(const Image8& image, const ScaleSource& source, const ModelAdapter& model,
                      ResizeMode policy = ResizeMode::Reject);

RasterF32 run_schedule(const Image8& image, const ScaleSchedule& schedule,
                       const ModelAdapter& model, ResizeMode policy = ResizeMode::Reject);

// Name of the manifest inside a per-scale directory.
inline constexpr std::string_view kManifestFileName = "manifest.tsv";

// Reads `<scale_dir>/manifest.tsv` and one CMAP per entry (the entry path's
// stem plus ".cmap"), reassembles, and maps back to the original size.
// Missing patch outputs are MissingPatch.
RasterF32 load_scale_map(const std::filesystem::path& scale_dir);

// Combines `<maps_dir>/<source tag>/` for every schedule entry.
RasterF32 aggregate_directory(const std::filesystem::path& maps_dir,
                              const ScaleSchedule& schedule);

}  // namespace oodseg
