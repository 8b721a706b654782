/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oodseg/error.hpp"
#include "oodseg/raster.hpp"
#include "oodseg/raster_io.hpp"

namespace oodseg {

// rows x cols equally sized, non-overlapping patches that exactly cover the
// image.
struct PatchGrid {
  Size image;
  Size patch;
  std::size_t rows = 0;
  std::size_t cols = 0;

  std::size_t count() const noexcept { return rows * cols; }
  friend bool operator==(const PatchGrid&, const PatchGrid&) = default;
};

// A grid plus the resize that produced its working size. `original` equals
// `grid.image` when no resize was needed.
struct GridPlan {
  PatchGrid grid;
  Size original;
  ResizeMode mode = ResizeMode::Reject;

  bool resized() const noexcept { return original != grid.image; }
};

// Builds the sqrt(N) x sqrt(N) grid. When a side is not divisible, REJECT
// throws NotDivisible and the RESIZE modes round that side up to the next
// multiple of sqrt(N).
GridPlan make_uniform_grid(std::size_t height, std::size_t width, std::size_t n_patches,
                           ResizeMode policy = ResizeMode::Reject);

// Exact integer square root, or NotPerfectSquare.
std::size_t grid_side(std::size_t n_patches);

enum class SchemeKind { A, B, C };

std::string_view to_string(SchemeKind kind) noexcept;
SchemeKind parse_scheme_kind(std::string_view text);

// Mixed-size partition of one image. Rectangles are kept in row-major order
// of their top-left corners.
struct PatchScheme {
  Size image;
  std::vector<Rect> rects;
};

PatchScheme make_scheme(SchemeKind kind, std::size_t height, std::size_t width);
PatchScheme to_scheme(const PatchGrid& grid);

// Ids are "<image_id>_p<index>" with a four digit index; each entry's path is
// the id plus `extension`.
PatchManifest make_manifest(const PatchScheme& scheme, const std::string& image_id,
                            const std::string& extension);
PatchManifest make_manifest(const GridPlan& plan, const std::string& image_id,
                            const std::string& extension);

RasterF32 crop(const RasterF32& raster, const Rect& rect);
Image8 crop(const Image8& image, const Rect& rect);
LabelMask crop(const LabelMask& mask, const Rect& rect);

std::vector<RasterF32> slice(const RasterF32& raster, const PatchScheme& scheme);
std::vector<Image8> slice(const Image8& image, const PatchScheme& scheme);

// Scatters each patch into its manifest rectangle. patches[i] belongs to
// manifest.entries[i]; the result does not depend on the order of the pairs.
RasterF32 reassemble(std::span<const RasterF32> patches, const PatchManifest& manifest);

// Maps a raster at the manifest's working size back to the original image
// size using the manifest's resize mode; identity when no resize was applied.
RasterF32 to_original_size(const RasterF32& working, const PatchManifest& manifest);

RasterF32 resize(const RasterF32& raster, Size target, ResizeMode mode);
Image8 resize(const Image8& image, Size target, ResizeMode mode);

}  // namespace oodseg
