/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oodseg/raster.hpp"

namespace oodseg {

// CMAP layout, all integers little-endian:
//   0..3   "CMAP"
//   4      version (0x01)
//   5..8   height (u32)
//   9..12  width (u32)
//   13..16 reserved, zero
//   17..   height * width binary32 values, row-major, top-left origin
inline constexpr std::size_t kCmapHeaderSize = 17;
inline constexpr std::uint8_t kCmapVersion = 1;
// Rasters above this pixel count are rejected as DimensionOverflow.
inline constexpr std::uint64_t kCmapMaxPixels = std::uint64_t{1} << 32;

std::vector<std::uint8_t> encode_cmap(const RasterF32& raster);
RasterF32 decode_cmap(std::span<const std::uint8_t> bytes);

RasterF32 read_cmap(const std::filesystem::path& path);
// Atomic: the file appears fully written or not at all.
void write_cmap(const RasterF32& raster, const std::filesystem::path& path);

struct ManifestEntry {
  std::string patch_id;
  Rect rect;
  std::string path;

  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

// Serialized patch set of one image. `image_size` is the (working) extent the
// rectangles partition; `original_size` is set when the image was resized
// before tiling and outputs must be mapped back.
struct PatchManifest {
  std::string image_id;
  Size image_size;
  std::optional<Size> original_size;
  ResizeMode resize = ResizeMode::Reject;
  std::vector<ManifestEntry> entries;

  friend bool operator==(const PatchManifest&, const PatchManifest&) = default;
};

// Throws OverlappingPatches / CoverageGap unless `rects` partition `extent`
// exactly. Zero-area rectangles are MalformedLine.
void validate_partition(std::span<const Rect> rects, Size extent);
void validate_manifest(const PatchManifest& manifest);

std::string format_manifest(const PatchManifest& manifest);
// Without an `image_size` directive the extent is the bounding box of the
// rectangles, anchored at the origin.
PatchManifest parse_manifest(std::string_view text);

PatchManifest read_manifest(const std::filesystem::path& path);
void write_manifest(const PatchManifest& manifest, const std::filesystem::path& path);

// One class name per line; line number is the channel index.
std::vector<std::string> read_class_index(const std::filesystem::path& path);
void write_class_index(std::span<const std::string> names, const std::filesystem::path& path);

struct NamedVolume {
  ProbabilityVolume probs;
  std::vector<std::string> class_names;
};

// A volume directory holds `classes.txt` plus one CMAP per channel named
// channel_<k>.cmap (k zero-padded to three digits).
std::filesystem::path channel_file_name(std::size_t channel);
NamedVolume read_probability_volume(const std::filesystem::path& dir);
void write_probability_volume(const NamedVolume& volume, const std::filesystem::path& dir);

}  // namespace oodseg
