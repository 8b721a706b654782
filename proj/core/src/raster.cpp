/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "oodseg/raster.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "oodseg/error.hpp"

namespace oodseg {

std::string to_string(const Size& size) {
  return std::to_string(size.height) + "x" + std::to_string(size.width);
}

std::string_view to_string(ResizeMode mode) noexcept {
  switch (mode) {
    case ResizeMode::Reject: return "reject";
    case ResizeMode::Nearest: return "nearest";
    case ResizeMode::Bilinear: return "bilinear";
  }
  return "reject";
}

ResizeMode parse_resize_mode(std::string_view text) {
  if (text == "reject") return ResizeMode::Reject;
  if (text == "nearest") return ResizeMode::Nearest;
  if (text == "bilinear") return ResizeMode::Bilinear;
  fail(ErrorCode::BadConfig, "unknown resize mode '" + std::string(text) + "'");
}

bool Rect::intersects(const Rect& other) const noexcept {
  return x < other.right() && other.x < right() && y < other.bottom() && other.y < bottom();
}

RasterF32::RasterF32(std::size_t height, std::size_t width, float fill)
    : height_(height), width_(width), values_(height * width, fill) {}

RasterF32::RasterF32(std::size_t height, std::size_t width, std::vector<float> values)
    : height_(height), width_(width), values_(std::move(values)) {
  if (values_.size() != height_ * width_) {
    fail(ErrorCode::DimensionMismatch, "raster " + to_string(size()) + " given " +
                                           std::to_string(values_.size()) + " values");
  }
}

void RasterF32::validate() const {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const float v = values_[i];
    if (!std::isfinite(v) || v < 0.0f || v > 1.0f) {
      fail(ErrorCode::ValueOutOfRange,
           "value " + std::to_string(v) + " at pixel " + std::to_string(i) + " is outside [0,1]");
    }
  }
}

bool RasterF32::bit_equal(const RasterF32& other) const noexcept {
  return height_ == other.height_ && width_ == other.width_ &&
         (values_.empty() ||
          std::memcmp(values_.data(), other.values_.data(), values_.size() * sizeof(float)) == 0);
}

LabelMask::LabelMask(std::size_t height, std::size_t width, std::uint8_t fill)
    : height_(height), width_(width), labels_(height * width, fill) {}

LabelMask::LabelMask(std::size_t height, std::size_t width, std::vector<std::uint8_t> labels)
    : height_(height), width_(width), labels_(std::move(labels)) {
  if (labels_.size() != height_ * width_) {
    fail(ErrorCode::DimensionMismatch, "label mask " + to_string(size()) + " given " +
                                           std::to_string(labels_.size()) + " labels");
  }
}

std::size_t LabelMask::count(std::uint8_t code) const noexcept {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), code));
}

void LabelMask::validate() const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!is_label_code(labels_[i])) {
      fail(ErrorCode::IllegalLabelCode, "label value " + std::to_string(labels_[i]) +
                                            " at pixel " + std::to_string(i));
    }
  }
}

ProbabilityVolume::ProbabilityVolume(std::size_t height, std::size_t width,
                                     std::size_t num_classes)
    : height_(height),
      width_(width),
      num_classes_(num_classes),
      values_(height * width * num_classes, 0.0f) {}

std::span<const float> ProbabilityVolume::channel(std::size_t cls) const {
  return std::span<const float>(values_).subspan(cls * pixel_count(), pixel_count());
}

std::span<float> ProbabilityVolume::channel(std::size_t cls) {
  return std::span<float>(values_).subspan(cls * pixel_count(), pixel_count());
}

void ProbabilityVolume::validate() const {
  if (num_classes_ < 2) {
    fail(ErrorCode::TooFewClasses, "probability volume has " + std::to_string(num_classes_) +
                                       " classes, need at least 2");
  }
  const std::size_t n = pixel_count();
  for (std::size_t p = 0; p < n; ++p) {
    double sum = 0.0;
    for (std::size_t c = 0; c < num_classes_; ++c) {
      const float v = at(p, c);
      if (!std::isfinite(v) || v < 0.0f || v > 1.0f) {
        fail(ErrorCode::BadProbabilities, "probability " + std::to_string(v) + " at pixel " +
                                              std::to_string(p) + " class " + std::to_string(c));
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
      fail(ErrorCode::BadProbabilities,
           "class probabilities at pixel " + std::to_string(p) + " sum to " + std::to_string(sum));
    }
  }
}

}  // namespace oodseg
