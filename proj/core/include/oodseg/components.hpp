/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "oodseg/raster.hpp"

namespace oodseg {

enum class Connectivity { Four = 4, Eight = 8 };

// Binary H x W mask, row-major, nonzero = set.
struct BinaryMask {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<std::uint8_t> bits;

  BinaryMask() = default;
  BinaryMask(std::size_t h, std::size_t w) : height(h), width(w), bits(h * w, 0) {}

  bool at(std::size_t row, std::size_t col) const { return bits[row * width + col] != 0; }
  std::size_t count() const noexcept;
};

struct BoundingBox {
  std::size_t x0 = 0;
  std::size_t y0 = 0;
  std::size_t x1 = 0;  // inclusive
  std::size_t y1 = 0;  // inclusive
};

// One maximal connected region. `pixels` are row-major indices in ascending
// order.
struct Segment {
  std::uint32_t id = 0;  // 1-based, matches the label image
  std::vector<std::uint32_t> pixels;
  BoundingBox bbox;

  std::size_t area() const noexcept { return pixels.size(); }
};

struct Components {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<std::uint32_t> labels;  // 0 = background, k = segments[k-1]
  std::vector<Segment> segments;
};

// Two-pass union-find labeling. Segment ids follow the row-major order of
// each segment's first pixel.
Components connected_components(const BinaryMask& mask,
                                Connectivity connectivity = Connectivity::Eight);

}  // namespace oodseg
