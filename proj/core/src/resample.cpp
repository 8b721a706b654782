/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include <algorithm>
#include <cmath>

#include "oodseg/tiling.hpp"

namespace oodseg {

namespace {

// Pixel centers are aligned: destination pixel d samples source coordinate
// (d + 0.5) * src / dst - 0.5.
std::size_t nearest_index(std::size_t dst, std::size_t src_n, std::size_t dst_n) {
  const std::size_t idx = ((2 * dst + 1) * src_n) / (2 * dst_n);
  return std::min(idx, src_n - 1);
}

struct LinearTap {
  std::size_t lo;
  std::size_t hi;
  double frac;
};

LinearTap linear_tap(std::size_t dst, std::size_t src_n, std::size_t dst_n) {
  double s = (static_cast<double>(dst) + 0.5) * static_cast<double>(src_n) /
                 static_cast<double>(dst_n) - 0.5;
  s = std::clamp(s, 0.0, static_cast<double>(src_n - 1));
  const auto lo = static_cast<std::size_t>(std::floor(s));
  const std::size_t hi = std::min(lo + 1, src_n - 1);
  return {lo, hi, s - static_cast<double>(lo)};
}

template <typename Sample, typename Store>
void resample(Size src, Size dst, std::size_t channels, ResizeMode mode, Sample sample,
              Store store) {
  if (mode == ResizeMode::Nearest) {
    for (std::size_t r = 0; r < dst.height; ++r) {
      const std::size_t sr = nearest_index(r, src.height, dst.height);
      for (std::size_t c = 0; c < dst.width; ++c) {
        const std::size_t sc = nearest_index(c, src.width, dst.width);
        for (std::size_t ch = 0; ch < channels; ++ch) store(r, c, ch, sample(sr, sc, ch));
      }
    }
    return;
  }
  for (std::size_t r = 0; r < dst.height; ++r) {
    const LinearTap ty = linear_tap(r, src.height, dst.height);
    for (std::size_t c = 0; c < dst.width; ++c) {
      const LinearTap tx = linear_tap(c, src.width, dst.width);
      for (std::size_t ch = 0; ch < channels; ++ch) {
        const double top = sample(ty.lo, tx.lo, ch) * (1.0 - tx.frac) + sample(ty.lo, tx.hi, ch) * tx.frac;
        const double bottom =
            sample(ty.hi, tx.lo, ch) * (1.0 - tx.frac) + sample(ty.hi, tx.hi, ch) * tx.frac;
        store(r, c, ch, top * (1.0 - ty.frac) + bottom * ty.frac);
      }
    }
  }
}

void check_resize(Size src, Size target, ResizeMode mode) {
  if (target.height == 0 || target.width == 0) {
    fail(ErrorCode::DimensionMismatch, "cannot resize to " + to_string(target));
  }
  if (mode == ResizeMode::Reject && src != target) {
    fail(ErrorCode::NotDivisible,
         "resize from " + to_string(src) + " to " + to_string(target) + " under reject policy");
  }
}

}  // namespace

RasterF32 resize(const RasterF32& raster, Size target, ResizeMode mode) {
  check_resize(raster.size(), target, mode);
  if (raster.size() == target) return raster;
  RasterF32 out(target.height, target.width);
  resample(
      raster.size(), target, 1, mode,
      [&](std::size_t r, std::size_t c, std::size_t) { return static_cast<double>(raster.at(r, c)); },
      [&](std::size_t r, std::size_t c, std::size_t, double v) {
        out.at(r, c) = std::clamp(static_cast<float>(v), 0.0f, 1.0f);
      });
  return out;
}

Image8 resize(const Image8& image, Size target, ResizeMode mode) {
  check_resize(image.size(), target, mode);
  if (image.size() == target) return image;
  Image8 out(target.height, target.width, image.channels);
  resample(
      image.size(), target, image.channels, mode,
      [&](std::size_t r, std::size_t c, std::size_t ch) {
        return static_cast<double>(image.at(r, c, ch));
      },
      [&](std::size_t r, std::size_t c, std::size_t ch, double v) {
        out.at(r, c, ch) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
      });
  return out;
}

}  // namespace oodseg
