/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "oodseg/tiling.hpp"

#include <algorithm>
#include <cstdio>

namespace oodseg {

namespace {

std::size_t round_up(std::size_t value, std::size_t multiple) {
  return (value + multiple - 1) / multiple * multiple;
}

// Appends a rows x cols block of equally sized rectangles starting at row y0.
void add_block(std::vector<Rect>& rects, std::size_t y0, std::size_t rows, std::size_t cols,
               std::size_t patch_h, std::size_t patch_w) {
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      rects.push_back({c * patch_w, y0 + r * patch_h, patch_w, patch_h});
    }
  }
}

void sort_row_major(std::vector<Rect>& rects) {
  std::sort(rects.begin(), rects.end(), [](const Rect& a, const Rect& b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  });
}

template <typename Patch, typename Whole>
std::vector<Patch> slice_impl(const Whole& whole, const PatchScheme& scheme) {
  if (whole.size() != scheme.image) {
    fail(ErrorCode::DimensionMismatch, "input is " + to_string(whole.size()) +
                                           " but the patch layout covers " +
                                           to_string(scheme.image));
  }
  std::vector<Patch> patches;
  patches.reserve(scheme.rects.size());
  for (const Rect& rect : scheme.rects) patches.push_back(crop(whole, rect));
  return patches;
}

void check_crop(Size size, const Rect& rect) {
  if (rect.w == 0 || rect.h == 0 || rect.right() > size.width || rect.bottom() > size.height) {
    fail(ErrorCode::DimensionMismatch, "crop rectangle outside " + to_string(size));
  }
}

}  // namespace

std::size_t grid_side(std::size_t n_patches) {
  std::size_t side = 0;
  while ((side + 1) * (side + 1) <= n_patches) ++side;
  if (n_patches == 0 || side * side != n_patches) {
    fail(ErrorCode::NotPerfectSquare,
         "patch count " + std::to_string(n_patches) + " is not a positive perfect square");
  }
  return side;
}

GridPlan make_uniform_grid(std::size_t height, std::size_t width, std::size_t n_patches,
                           ResizeMode policy) {
  const std::size_t side = grid_side(n_patches);
  if (height == 0 || width == 0) {
    fail(ErrorCode::DimensionMismatch, "empty image");
  }
  Size working{height, width};
  if (height % side != 0 || width % side != 0) {
    if (policy == ResizeMode::Reject) {
      fail(ErrorCode::NotDivisible, std::to_string(height) + "x" + std::to_string(width) +
                                        " is not divisible by a " + std::to_string(side) + "x" +
                                        std::to_string(side) + " grid");
    }
    working = {round_up(height, side), round_up(width, side)};
  }
  GridPlan plan;
  plan.grid.image = working;
  plan.grid.rows = side;
  plan.grid.cols = side;
  plan.grid.patch = {working.height / side, working.width / side};
  plan.original = {height, width};
  plan.mode = plan.resized() ? policy : ResizeMode::Reject;
  return plan;
}

std::string_view to_string(SchemeKind kind) noexcept {
  switch (kind) {
    case SchemeKind::A: return "A";
    case SchemeKind::B: return "B";
    case SchemeKind::C: return "C";
  }
  return "A";
}

SchemeKind parse_scheme_kind(std::string_view text) {
  if (text == "A" || text == "a") return SchemeKind::A;
  if (text == "B" || text == "b") return SchemeKind::B;
  if (text == "C" || text == "c") return SchemeKind::C;
  fail(ErrorCode::BadConfig, "unknown patch scheme '" + std::string(text) + "'");
}

PatchScheme make_scheme(SchemeKind kind, std::size_t height, std::size_t width) {
  // Finest row/column subdivision each layout uses.
  std::size_t need_h = 8;
  std::size_t need_w = 8;
  if (kind == SchemeKind::A) need_h = need_w = 16;
  if (kind == SchemeKind::C) need_w = 16;
  if (height == 0 || width == 0 || height % need_h != 0 || width % need_w != 0) {
    fail(ErrorCode::NotDivisible, "scheme " + std::string(to_string(kind)) + " needs height % " +
                                      std::to_string(need_h) + " == 0 and width % " +
                                      std::to_string(need_w) + " == 0, got " +
                                      std::to_string(height) + "x" + std::to_string(width));
  }
  const std::size_t H = height;
  const std::size_t W = width;
  PatchScheme scheme{{H, W}, {}};
  auto& rects = scheme.rects;
  // Patches get finer toward the bottom of the frame, where nearby objects
  // appear large and distant ones small.
  switch (kind) {
    case SchemeKind::A:
      add_block(rects, 0, 2, 4, H / 4, W / 4);
      add_block(rects, H / 2, 2, 8, H / 8, W / 8);
      add_block(rects, 3 * H / 4, 4, 16, H / 16, W / 16);
      break;
    case SchemeKind::B:
      add_block(rects, 0, 1, 2, H / 2, W / 2);
      add_block(rects, H / 2, 4, 8, H / 8, W / 8);
      break;
    case SchemeKind::C:
      add_block(rects, 0, 1, 4, H / 4, W / 4);
      add_block(rects, H / 4, 4, 8, H / 8, W / 8);
      add_block(rects, 3 * H / 4, 2, 16, H / 8, W / 16);
      break;
  }
  sort_row_major(rects);
  return scheme;
}

PatchScheme to_scheme(const PatchGrid& grid) {
  PatchScheme scheme{grid.image, {}};
  add_block(scheme.rects, 0, grid.rows, grid.cols, grid.patch.height, grid.patch.width);
  return scheme;
}

PatchManifest make_manifest(const PatchScheme& scheme, const std::string& image_id,
                            const std::string& extension) {
  PatchManifest manifest;
  manifest.image_id = image_id;
  manifest.image_size = scheme.image;
  manifest.entries.reserve(scheme.rects.size());
  for (std::size_t i = 0; i < scheme.rects.size(); ++i) {
    char index[16];
    std::snprintf(index, sizeof(index), "_p%04zu", i);
    std::string id = image_id + index;
    manifest.entries.push_back({id, scheme.rects[i], id + extension});
  }
  return manifest;
}

PatchManifest make_manifest(const GridPlan& plan, const std::string& image_id,
                            const std::string& extension) {
  PatchManifest manifest = make_manifest(to_scheme(plan.grid), image_id, extension);
  if (plan.resized()) {
    manifest.original_size = plan.original;
    manifest.resize = plan.mode;
  }
  return manifest;
}

RasterF32 crop(const RasterF32& raster, const Rect& rect) {
  check_crop(raster.size(), rect);
  RasterF32 out(rect.h, rect.w);
  for (std::size_t r = 0; r < rect.h; ++r) {
    const auto src = raster.values().subspan((rect.y + r) * raster.width() + rect.x, rect.w);
    std::copy(src.begin(), src.end(), out.values().begin() + r * rect.w);
  }
  return out;
}

Image8 crop(const Image8& image, const Rect& rect) {
  check_crop(image.size(), rect);
  Image8 out(rect.h, rect.w, image.channels);
  const std::size_t row_bytes = rect.w * image.channels;
  for (std::size_t r = 0; r < rect.h; ++r) {
    const auto* src = image.data.data() + ((rect.y + r) * image.width + rect.x) * image.channels;
    std::copy(src, src + row_bytes, out.data.begin() + r * row_bytes);
  }
  return out;
}

LabelMask crop(const LabelMask& mask, const Rect& rect) {
  check_crop(mask.size(), rect);
  std::vector<std::uint8_t> labels(rect.area());
  for (std::size_t r = 0; r < rect.h; ++r) {
    const auto src = mask.labels().subspan((rect.y + r) * mask.width() + rect.x, rect.w);
    std::copy(src.begin(), src.end(), labels.begin() + r * rect.w);
  }
  return LabelMask(rect.h, rect.w, std::move(labels));
}

std::vector<RasterF32> slice(const RasterF32& raster, const PatchScheme& scheme) {
  return slice_impl<RasterF32>(raster, scheme);
}

std::vector<Image8> slice(const Image8& image, const PatchScheme& scheme) {
  return slice_impl<Image8>(image, scheme);
}

RasterF32 reassemble(std::span<const RasterF32> patches, const PatchManifest& manifest) {
  if (patches.size() != manifest.entries.size()) {
    fail(ErrorCode::DimensionMismatch, std::to_string(patches.size()) + " patches for " +
                                           std::to_string(manifest.entries.size()) +
                                           " manifest entries");
  }
  validate_manifest(manifest);
  RasterF32 out(manifest.image_size.height, manifest.image_size.width);
  for (std::size_t i = 0; i < patches.size(); ++i) {
    const Rect& rect = manifest.entries[i].rect;
    const RasterF32& patch = patches[i];
    if (patch.height() != rect.h || patch.width() != rect.w) {
      fail(ErrorCode::DimensionMismatch, "patch '" + manifest.entries[i].patch_id + "' is " +
                                             to_string(patch.size()) + ", manifest expects " +
                                             std::to_string(rect.h) + "x" +
                                             std::to_string(rect.w));
    }
    for (std::size_t r = 0; r < rect.h; ++r) {
      const auto src = patch.values().subspan(r * rect.w, rect.w);
      std::copy(src.begin(), src.end(),
                out.values().begin() + (rect.y + r) * out.width() + rect.x);
    }
  }
  return out;
}

RasterF32 to_original_size(const RasterF32& working, const PatchManifest& manifest) {
  if (working.size() != manifest.image_size) {
    fail(ErrorCode::DimensionMismatch, "raster is " + to_string(working.size()) +
                                           ", manifest working size is " +
                                           to_string(manifest.image_size));
  }
  if (!manifest.original_size || *manifest.original_size == manifest.image_size) return working;
  return resize(working, *manifest.original_size, manifest.resize);
}

}  // namespace oodseg
