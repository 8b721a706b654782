/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "oodseg/raster.hpp"

namespace oodseg {

// Decodes 8-bit grayscale or RGB PNGs (alpha channels are dropped). Anything
// else, including palette images and 16-bit depth, is UnsupportedPng.
Image8 decode_png(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_png(const Image8& image);

Image8 read_image(const std::filesystem::path& path);
void write_image(const Image8& image, const std::filesystem::path& path);

// Label masks must be single-channel 8-bit PNGs whose values are 0, 1 or 255.
LabelMask read_label_mask(const std::filesystem::path& path);
void write_label_mask(const LabelMask& mask, const std::filesystem::path& path);

}  // namespace oodseg
