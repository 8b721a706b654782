/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace oodseg {

struct Size {
  std::size_t height = 0;
  std::size_t width = 0;

  std::size_t area() const noexcept { return height * width; }
  friend bool operator==(const Size&, const Size&) = default;
};

std::string to_string(const Size& size);

// Axis-aligned rectangle in pixel coordinates, top-left origin.
struct Rect {
  std::size_t x = 0;
  std::size_t y = 0;
  std::size_t w = 0;
  std::size_t h = 0;

  std::size_t area() const noexcept { return w * h; }
  std::size_t right() const noexcept { return x + w; }
  std::size_t bottom() const noexcept { return y + h; }
  bool intersects(const Rect& other) const noexcept;

  friend bool operator==(const Rect&, const Rect&) = default;
};

// H x W row-major scalar field. Values are confidences, uncertainties or fused
// scores and must be finite and within [0,1].
class RasterF32 {
 public:
  RasterF32() = default;
  RasterF32(std::size_t height, std::size_t width, float fill = 0.0f);
  RasterF32(std::size_t height, std::size_t width, std::vector<float> values);

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  Size size() const noexcept { return {height_, width_}; }
  std::size_t pixel_count() const noexcept { return values_.size(); }

  float at(std::size_t row, std::size_t col) const { return values_[row * width_ + col]; }
  float& at(std::size_t row, std::size_t col) { return values_[row * width_ + col]; }
  float operator[](std::size_t index) const { return values_[index]; }
  float& operator[](std::size_t index) { return values_[index]; }

  std::span<const float> values() const noexcept { return values_; }
  std::span<float> values() noexcept { return values_; }

  // Throws ValueOutOfRange on the first non-finite or out-of-[0,1] value.
  void validate() const;

  // Bitwise comparison: distinguishes -0.0f from 0.0f.
  bool bit_equal(const RasterF32& other) const noexcept;

  friend bool operator==(const RasterF32&, const RasterF32&) = default;

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<float> values_;
};

inline constexpr std::uint8_t kInDist = 0;
inline constexpr std::uint8_t kOod = 1;
inline constexpr std::uint8_t kIgnore = 255;

inline bool is_label_code(std::uint8_t v) noexcept {
  return v == kInDist || v == kOod || v == kIgnore;
}

// Ternary ground truth: in-distribution, OOD, or ignore (void).
class LabelMask {
 public:
  LabelMask() = default;
  LabelMask(std::size_t height, std::size_t width, std::uint8_t fill = kInDist);
  LabelMask(std::size_t height, std::size_t width, std::vector<std::uint8_t> labels);

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  Size size() const noexcept { return {height_, width_}; }
  std::size_t pixel_count() const noexcept { return labels_.size(); }

  std::uint8_t at(std::size_t row, std::size_t col) const { return labels_[row * width_ + col]; }
  std::uint8_t& at(std::size_t row, std::size_t col) { return labels_[row * width_ + col]; }
  std::uint8_t operator[](std::size_t index) const { return labels_[index]; }
  std::uint8_t& operator[](std::size_t index) { return labels_[index]; }

  std::span<const std::uint8_t> labels() const noexcept { return labels_; }

  std::size_t count(std::uint8_t code) const noexcept;

  // Throws IllegalLabelCode if anything other than 0/1/255 occurs.
  void validate() const;

  friend bool operator==(const LabelMask&, const LabelMask&) = default;

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<std::uint8_t> labels_;
};

// 8-bit interleaved image with 1 (gray) or 3 (RGB) channels.
struct Image8 {
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t channels = 1;
  std::vector<std::uint8_t> data;

  Image8() = default;
  Image8(std::size_t h, std::size_t w, std::size_t c, std::uint8_t fill = 0)
      : height(h), width(w), channels(c), data(h * w * c, fill) {}

  Size size() const noexcept { return {height, width}; }
  std::uint8_t at(std::size_t row, std::size_t col, std::size_t ch = 0) const {
    return data[(row * width + col) * channels + ch];
  }
  std::uint8_t& at(std::size_t row, std::size_t col, std::size_t ch = 0) {
    return data[(row * width + col) * channels + ch];
  }

  friend bool operator==(const Image8&, const Image8&) = default;
};

// Per-pixel class distributions stored channel-planar: channel c occupies
// values[c * H * W, (c + 1) * H * W).
class ProbabilityVolume {
 public:
  static constexpr double kSumTolerance = 1e-4;

  ProbabilityVolume() = default;
  ProbabilityVolume(std::size_t height, std::size_t width, std::size_t num_classes);

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  Size size() const noexcept { return {height_, width_}; }
  std::size_t num_classes() const noexcept { return num_classes_; }
  std::size_t pixel_count() const noexcept { return height_ * width_; }

  float at(std::size_t pixel, std::size_t cls) const { return values_[cls * pixel_count() + pixel]; }
  float& at(std::size_t pixel, std::size_t cls) { return values_[cls * pixel_count() + pixel]; }

  std::span<const float> channel(std::size_t cls) const;
  std::span<float> channel(std::size_t cls);

  // Throws BadProbabilities if an entry leaves [0,1] or a pixel's vector does
  // not sum to 1 within kSumTolerance; TooFewClasses if fewer than 2 channels.
  void validate() const;

  friend bool operator==(const ProbabilityVolume&, const ProbabilityVolume&) = default;

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::size_t num_classes_ = 0;
  std::vector<float> values_;
};

// How a working size is derived when an image does not divide evenly into a
// patch grid.
enum class ResizeMode { Reject, Nearest, Bilinear };

std::string_view to_string(ResizeMode mode) noexcept;
ResizeMode parse_resize_mode(std::string_view text);

// Per-pixel class index, e.g. the argmax of a ProbabilityVolume.
struct ClassMap {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<std::uint32_t> classes;
};

}  // namespace oodseg
