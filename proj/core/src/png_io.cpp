/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "oodseg/png_io.hpp"

#include <png.h>

#include <cstdio>
#include <cstring>
#include <string>

#include "oodseg/error.hpp"
#include "oodseg/fs.hpp"

namespace oodseg {
namespace fs = std::filesystem;

namespace {

struct ReadCursor {
  const std::uint8_t* data;
  std::size_t size;
  std::size_t offset;
};

struct PngStatus {
  char message[256];
};

void read_callback(png_structp png, png_bytep out, png_size_t length) {
  auto* cursor = static_cast<ReadCursor*>(png_get_io_ptr(png));
  if (cursor->offset + length > cursor->size) {
    png_error(png, "unexpected end of PNG data");
  }
  std::memcpy(out, cursor->data + cursor->offset, length);
  cursor->offset += length;
}

void write_callback(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

void flush_callback(png_structp) {}

void error_callback(png_structp png, png_const_charp message) {
  auto* status = static_cast<PngStatus*>(png_get_error_ptr(png));
  std::snprintf(status->message, sizeof(status->message), "%s", message);
  png_longjmp(png, 1);
}

void warning_callback(png_structp, png_const_charp) {}

// libpng reports errors by longjmp, so the functions holding a setjmp point
// keep only trivially destructible locals. They return false with
// status->message filled in on failure.
bool decode_png_raw(ReadCursor* cursor, Image8* image, PngStatus* status) {
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, status, error_callback, warning_callback);
  if (png == nullptr) {
    std::snprintf(status->message, sizeof(status->message), "png_create_read_struct failed");
    return false;
  }
  png_infop info = png_create_info_struct(png);
  if (info == nullptr || setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }
  png_set_read_fn(png, cursor, read_callback);
  png_read_info(png, info);

  const png_uint_32 width = png_get_image_width(png, info);
  const png_uint_32 height = png_get_image_height(png, info);
  const int bit_depth = png_get_bit_depth(png, info);
  const int color_type = png_get_color_type(png, info);
  if (bit_depth != 8) {
    png_error(png, "only 8-bit PNGs are supported");
  }
  if (png_get_interlace_type(png, info) != PNG_INTERLACE_NONE) {
    png_error(png, "interlaced PNGs are not supported");
  }
  std::size_t channels = 0;
  switch (color_type) {
    case PNG_COLOR_TYPE_GRAY: channels = 1; break;
    case PNG_COLOR_TYPE_GRAY_ALPHA:
      png_set_strip_alpha(png);
      channels = 1;
      break;
    case PNG_COLOR_TYPE_RGB: channels = 3; break;
    case PNG_COLOR_TYPE_RGB_ALPHA:
      png_set_strip_alpha(png);
      channels = 3;
      break;
    default: png_error(png, "only grayscale or RGB PNGs are supported");
  }
  png_read_update_info(png, info);

  image->height = height;
  image->width = width;
  image->channels = channels;
  image->data.assign(static_cast<std::size_t>(height) * width * channels, 0);
  const std::size_t stride = static_cast<std::size_t>(width) * channels;
  for (png_uint_32 row = 0; row < height; ++row) {
    png_read_row(png, image->data.data() + row * stride, nullptr);
  }
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return true;
}

bool encode_png_raw(const Image8* image, std::vector<std::uint8_t>* out, PngStatus* status) {
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, status, error_callback, warning_callback);
  if (png == nullptr) {
    std::snprintf(status->message, sizeof(status->message), "png_create_write_struct failed");
    return false;
  }
  png_infop info = png_create_info_struct(png);
  if (info == nullptr || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return false;
  }
  png_set_write_fn(png, out, write_callback, flush_callback);
  png_set_IHDR(png, info, static_cast<png_uint_32>(image->width),
               static_cast<png_uint_32>(image->height), 8,
               image->channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  const std::size_t stride = image->width * image->channels;
  for (std::size_t row = 0; row < image->height; ++row) {
    png_write_row(png, image->data.data() + row * stride);
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

}  // namespace

Image8 decode_png(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) {
    fail(ErrorCode::UnsupportedPng, "missing PNG signature");
  }
  ReadCursor cursor{bytes.data(), bytes.size(), 0};
  PngStatus status{};
  Image8 image;
  if (!decode_png_raw(&cursor, &image, &status)) {
    fail(ErrorCode::UnsupportedPng, status.message);
  }
  return image;
}

std::vector<std::uint8_t> encode_png(const Image8& image) {
  if (image.channels != 1 && image.channels != 3) {
    fail(ErrorCode::UnsupportedPng, "cannot encode " + std::to_string(image.channels) +
                                        "-channel image");
  }
  std::vector<std::uint8_t> out;
  PngStatus status{};
  if (!encode_png_raw(&image, &out, &status)) {
    fail(ErrorCode::IoFailure, status.message);
  }
  return out;
}

Image8 read_image(const fs::path& path) {
  const auto bytes = read_file_bytes(path);
  try {
    return decode_png(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.message());
  }
}

void write_image(const Image8& image, const fs::path& path) {
  write_file_atomic(path, encode_png(image));
}

LabelMask read_label_mask(const fs::path& path) {
  const Image8 image = read_image(path);
  if (image.channels != 1) {
    fail(ErrorCode::UnsupportedPng, path.string() + ": label masks must be single-channel");
  }
  LabelMask mask(image.height, image.width, image.data);
  try {
    mask.validate();
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.message());
  }
  return mask;
}

void write_label_mask(const LabelMask& mask, const fs::path& path) {
  mask.validate();
  Image8 image(mask.height(), mask.width(), 1);
  std::copy(mask.labels().begin(), mask.labels().end(), image.data.begin());
  write_image(image, path);
}

}  // namespace oodseg
