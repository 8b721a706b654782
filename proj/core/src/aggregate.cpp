/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "oodseg/aggregate.hpp"

#include <algorithm>

namespace oodseg {
namespace fs = std::filesystem;

RasterF32 combine_scales(std::span<const RasterF32> maps, std::span<const double> weights) {
  validate_weights(weights);
  if (maps.size() != weights.size()) {
    fail(ErrorCode::DimensionMismatch, std::to_string(maps.size()) + " maps for " +
                                           std::to_string(weights.size()) + " weights");
  }
  const Size size = maps.front().size();
  for (const auto& m : maps) {
    if (m.size() != size) {
      fail(ErrorCode::DimensionMismatch,
           "confidence maps differ in size: " + to_string(size) + " vs " + to_string(m.size()));
    }
  }
  const std::size_t n = size.area();
  std::vector<double> acc(n, 0.0);
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const double w = weights[i];
    if (w == 0.0) continue;
    const auto values = maps[i].values();
    for (std::size_t p = 0; p < n; ++p) acc[p] += w * static_cast<double>(values[p]);
  }
  RasterF32 out(size.height, size.width);
  for (std::size_t p = 0; p < n; ++p) out[p] = static_cast<float>(acc[p]);
  return out;
}

RasterF32 BrightnessModel::predict(const Image8& patch, const PatchContext&) const {
  RasterF32 out(patch.height, patch.width);
  for (std::size_t r = 0; r < patch.height; ++r) {
    for (std::size_t c = 0; c < patch.width; ++c) {
      unsigned sum = 0;
      for (std::size_t ch = 0; ch < patch.channels; ++ch) sum += patch.at(r, c, ch);
      out.at(r, c) = static_cast<float>(static_cast<double>(sum) /
                                        (255.0 * static_cast<double>(patch.channels)));
    }
  }
  return out;
}

PatchScheme layout_for(const ScaleSource& source, Size image, ResizeMode policy,
                       GridPlan* plan) {
  if (source.kind == ScaleSource::Kind::Scheme) {
    if (plan != nullptr) *plan = GridPlan{{image, image, 1, 1}, image, ResizeMode::Reject};
    return make_scheme(source.scheme, image.height, image.width);
  }
  GridPlan p = make_uniform_grid(image.height, image.width, source.n_patches, policy);
  if (plan != nullptr) *plan = p;
  return to_scheme(p.grid);
}

RasterF32 infer_scale(const Image8& image, const ScaleSource& source, const ModelAdapter& model,
                      ResizeMode policy) {
  GridPlan plan;
  const PatchScheme scheme = layout_for(source, image.size(), policy, &plan);
  const Image8 working = plan.resized() ? resize(image, plan.grid.image, plan.mode) : image;
  PatchManifest manifest = make_manifest(scheme, "image", ".cmap");
  if (plan.resized()) {
    manifest.original_size = plan.original;
    manifest.resize = plan.mode;
  }
  std::vector<RasterF32> outputs;
  outputs.reserve(scheme.rects.size());
  for (std::size_t i = 0; i < scheme.rects.size(); ++i) {
    const Rect& rect = scheme.rects[i];
    RasterF32 out = model.predict(crop(working, rect), {source, rect, scheme.image, i});
    out.validate();
    outputs.push_back(std::move(out));
  }
  return to_original_size(reassemble(outputs, manifest), manifest);
}

RasterF32 run_schedule(const Image8& image, const ScaleSchedule& schedule,
                       const ModelAdapter& model, ResizeMode policy) {
  std::vector<RasterF32> maps;
  maps.reserve(schedule.size());
  for (const auto& e : schedule.entries()) {
    maps.push_back(infer_scale(image, e.source, model, policy));
  }
  return combine_scales(maps, schedule.weights());
}

RasterF32 load_scale_map(const fs::path& scale_dir) {
  const PatchManifest manifest = read_manifest(scale_dir / kManifestFileName);
  std::vector<RasterF32> patches;
  patches.reserve(manifest.entries.size());
  std::vector<std::string> missing;
  for (const auto& e : manifest.entries) {
    const fs::path file = scale_dir / fs::path(e.path).stem().concat(".cmap");
    if (!fs::exists(file)) {
      missing.push_back(file.filename().string());
      continue;
    }
    patches.push_back(read_cmap(file));
  }
  if (!missing.empty()) {
    std::string list;
    for (std::size_t i = 0; i < missing.size() && i < 5; ++i) list += (i ? ", " : "") + missing[i];
    if (missing.size() > 5) list += ", ...";
    fail(ErrorCode::MissingPatch, scale_dir.string() + ": " + std::to_string(missing.size()) +
                                      " of " + std::to_string(manifest.entries.size()) +
                                      " patch outputs missing (" + list + ")");
  }
  return to_original_size(reassemble(patches, manifest), manifest);
}

RasterF32 aggregate_directory(const fs::path& maps_dir, const ScaleSchedule& schedule) {
  std::vector<RasterF32> maps;
  maps.reserve(schedule.size());
  for (const auto& e : schedule.entries()) {
    maps.push_back(load_scale_map(maps_dir / e.source.tag()));
  }
  return combine_scales(maps, schedule.weights());
}

}  // namespace oodseg
