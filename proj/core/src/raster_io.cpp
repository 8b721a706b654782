/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "oodseg/raster_io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstring>
#include <set>
#include <sstream>

#include "oodseg/error.hpp"
#include "oodseg/fs.hpp"

namespace oodseg {
namespace fs = std::filesystem;

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
}

std::uint32_t get_u32(std::span<const std::uint8_t> bytes, std::size_t offset) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<std::uint32_t>(bytes[offset + i]) << (8 * i);
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

bool parse_size_t(std::string_view s, std::size_t& out) {
  if (s.empty()) return false;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

Size parse_size_directive(std::string_view value, std::size_t line_no) {
  std::istringstream in{std::string(value)};
  std::string h, w;
  in >> h >> w;
  Size size;
  if (!parse_size_t(h, size.height) || !parse_size_t(w, size.width)) {
    fail(ErrorCode::MalformedLine,
         "line " + std::to_string(line_no) + ": expected '<height> <width>'");
  }
  return size;
}

}  // namespace

std::vector<std::uint8_t> encode_cmap(const RasterF32& raster) {
  if (raster.height() > UINT32_MAX || raster.width() > UINT32_MAX) {
    fail(ErrorCode::DimensionOverflow, "raster " + to_string(raster.size()) + " exceeds u32");
  }
  raster.validate();
  std::vector<std::uint8_t> out;
  out.reserve(kCmapHeaderSize + raster.pixel_count() * 4);
  out.insert(out.end(), {'C', 'M', 'A', 'P', kCmapVersion});
  put_u32(out, static_cast<std::uint32_t>(raster.height()));
  put_u32(out, static_cast<std::uint32_t>(raster.width()));
  put_u32(out, 0);
  for (const float v : raster.values()) {
    put_u32(out, std::bit_cast<std::uint32_t>(v));
  }
  return out;
}

RasterF32 decode_cmap(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kCmapHeaderSize) {
    fail(ErrorCode::TruncatedFile, "CMAP header needs 17 bytes, got " + std::to_string(bytes.size()));
  }
  if (std::memcmp(bytes.data(), "CMAP", 4) != 0) {
    fail(ErrorCode::BadMagic, "missing CMAP signature");
  }
  if (bytes[4] != kCmapVersion) {
    fail(ErrorCode::BadMagic, "unsupported CMAP version " + std::to_string(bytes[4]));
  }
  if (get_u32(bytes, 13) != 0) {
    fail(ErrorCode::BadMagic, "reserved CMAP header bytes are not zero");
  }
  const std::uint64_t height = get_u32(bytes, 5);
  const std::uint64_t width = get_u32(bytes, 9);
  const std::uint64_t pixels = height * width;
  if (height == 0 || width == 0 || pixels > kCmapMaxPixels) {
    fail(ErrorCode::DimensionOverflow, "unsupported CMAP dimensions " + std::to_string(height) +
                                           "x" + std::to_string(width));
  }
  const std::uint64_t expected = kCmapHeaderSize + pixels * 4;
  if (bytes.size() < expected) {
    fail(ErrorCode::TruncatedFile, "CMAP payload needs " + std::to_string(expected) +
                                       " bytes, got " + std::to_string(bytes.size()));
  }
  if (bytes.size() > expected) {
    fail(ErrorCode::TrailingData, std::to_string(bytes.size() - expected) +
                                      " bytes after the CMAP payload");
  }
  std::vector<float> values(pixels);
  for (std::size_t i = 0; i < pixels; ++i) {
    values[i] = std::bit_cast<float>(get_u32(bytes, kCmapHeaderSize + 4 * i));
  }
  RasterF32 raster(height, width, std::move(values));
  raster.validate();
  return raster;
}

RasterF32 read_cmap(const fs::path& path) {
  const auto bytes = read_file_bytes(path);
  try {
    return decode_cmap(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.message());
  }
}

void write_cmap(const RasterF32& raster, const fs::path& path) {
  write_file_atomic(path, encode_cmap(raster));
}

void validate_partition(std::span<const Rect> rects, Size extent) {
  if (rects.empty()) {
    fail(ErrorCode::CoverageGap, "no patches cover the " + to_string(extent) + " image");
  }
  std::vector<Rect> sorted(rects.begin(), rects.end());
  std::sort(sorted.begin(), sorted.end(), [](const Rect& a, const Rect& b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  });
  std::uint64_t covered = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const Rect& r = sorted[i];
    if (r.w == 0 || r.h == 0) {
      fail(ErrorCode::MalformedLine, "zero-area patch at (" + std::to_string(r.x) + "," +
                                         std::to_string(r.y) + ")");
    }
    if (r.right() > extent.width || r.bottom() > extent.height) {
      fail(ErrorCode::CoverageGap, "patch at (" + std::to_string(r.x) + "," +
                                       std::to_string(r.y) + ") extends beyond " +
                                       to_string(extent));
    }
    // Sorted by top edge, so only rectangles starting above r's bottom can meet it.
    for (std::size_t j = i + 1; j < sorted.size() && sorted[j].y < r.bottom(); ++j) {
      if (r.intersects(sorted[j])) {
        fail(ErrorCode::OverlappingPatches,
             "patches at (" + std::to_string(r.x) + "," + std::to_string(r.y) + ") and (" +
                 std::to_string(sorted[j].x) + "," + std::to_string(sorted[j].y) + ") overlap");
      }
    }
    covered += r.area();
  }
  if (covered != extent.area()) {
    fail(ErrorCode::CoverageGap, "patches cover " + std::to_string(covered) + " of " +
                                     std::to_string(extent.area()) + " pixels");
  }
}

void validate_manifest(const PatchManifest& manifest) {
  std::vector<Rect> rects;
  rects.reserve(manifest.entries.size());
  std::set<std::string_view> ids;
  for (const auto& e : manifest.entries) {
    if (!ids.insert(e.patch_id).second) {
      fail(ErrorCode::MalformedLine, "duplicate patch id '" + e.patch_id + "'");
    }
    rects.push_back(e.rect);
  }
  validate_partition(rects, manifest.image_size);
}

std::string format_manifest(const PatchManifest& manifest) {
  std::ostringstream out;
  out << "# oodseg patch manifest: patch_id, x, y, w, h, path (tab separated)\n";
  out << "# image_id: " << manifest.image_id << "\n";
  out << "# image_size: " << manifest.image_size.height << " " << manifest.image_size.width
      << "\n";
  if (manifest.original_size) {
    out << "# original_size: " << manifest.original_size->height << " "
        << manifest.original_size->width << "\n";
    out << "# resize: " << to_string(manifest.resize) << "\n";
  }
  for (const auto& e : manifest.entries) {
    out << e.patch_id << '\t' << e.rect.x << '\t' << e.rect.y << '\t' << e.rect.w << '\t'
        << e.rect.h << '\t' << e.path << '\n';
  }
  return out.str();
}

PatchManifest parse_manifest(std::string_view text) {
  PatchManifest manifest;
  bool has_size = false;
  std::size_t line_no = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const std::string_view body = trim(line.substr(1));
      const auto colon = body.find(':');
      if (colon == std::string_view::npos) continue;
      const std::string_view key = trim(body.substr(0, colon));
      const std::string_view value = trim(body.substr(colon + 1));
      if (key == "image_id") {
        manifest.image_id = std::string(value);
      } else if (key == "image_size") {
        manifest.image_size = parse_size_directive(value, line_no);
        has_size = true;
      } else if (key == "original_size") {
        manifest.original_size = parse_size_directive(value, line_no);
      } else if (key == "resize") {
        try {
          manifest.resize = parse_resize_mode(value);
        } catch (const Error&) {
          fail(ErrorCode::MalformedLine, "line " + std::to_string(line_no) +
                                             ": unknown resize mode '" + std::string(value) + "'");
        }
      }
      continue;
    }
    const auto fields = split(line, '\t');
    ManifestEntry entry;
    if (fields.size() != 6 || fields[0].empty() || fields[5].empty() ||
        !parse_size_t(fields[1], entry.rect.x) || !parse_size_t(fields[2], entry.rect.y) ||
        !parse_size_t(fields[3], entry.rect.w) || !parse_size_t(fields[4], entry.rect.h)) {
      fail(ErrorCode::MalformedLine, "line " + std::to_string(line_no) +
                                         ": expected patch_id<TAB>x<TAB>y<TAB>w<TAB>h<TAB>path");
    }
    entry.patch_id = std::string(fields[0]);
    entry.path = std::string(fields[5]);
    manifest.entries.push_back(std::move(entry));
  }
  if (!has_size) {
    for (const auto& e : manifest.entries) {
      manifest.image_size.width = std::max(manifest.image_size.width, e.rect.right());
      manifest.image_size.height = std::max(manifest.image_size.height, e.rect.bottom());
    }
  }
  if (manifest.original_size && manifest.resize == ResizeMode::Reject) {
    fail(ErrorCode::MalformedLine, "original_size given without a resize mode");
  }
  validate_manifest(manifest);
  return manifest;
}

PatchManifest read_manifest(const fs::path& path) {
  try {
    return parse_manifest(read_file_text(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::IoFailure) throw;
    throw Error(e.code(), path.string() + ": " + e.message());
  }
}

void write_manifest(const PatchManifest& manifest, const fs::path& path) {
  validate_manifest(manifest);
  write_file_atomic(path, format_manifest(manifest));
}

std::vector<std::string> read_class_index(const fs::path& path) {
  std::vector<std::string> names;
  const std::string text = read_file_text(path);
  auto lines = split(text, '\n');
  if (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto name = trim(lines[i]);
    if (name.empty()) {
      fail(ErrorCode::MalformedLine, path.string() + ": empty class name on line " +
                                         std::to_string(i + 1));
    }
    names.emplace_back(name);
  }
  return names;
}

void write_class_index(std::span<const std::string> names, const fs::path& path) {
  std::string text;
  for (const auto& n : names) {
    text += n;
    text += '\n';
  }
  write_file_atomic(path, text);
}

fs::path channel_file_name(std::size_t channel) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "channel_%03zu.cmap", channel);
  return buf;
}

NamedVolume read_probability_volume(const fs::path& dir) {
  NamedVolume out;
  out.class_names = read_class_index(dir / "classes.txt");
  const std::size_t num_classes = out.class_names.size();
  if (num_classes < 2) {
    fail(ErrorCode::TooFewClasses, dir.string() + ": need at least 2 classes");
  }
  for (std::size_t c = 0; c < num_classes; ++c) {
    const RasterF32 channel = read_cmap(dir / channel_file_name(c));
    if (c == 0) {
      out.probs = ProbabilityVolume(channel.height(), channel.width(), num_classes);
    } else if (channel.size() != out.probs.size()) {
      fail(ErrorCode::DimensionMismatch, dir.string() + ": channel " + std::to_string(c) +
                                             " is " + to_string(channel.size()) + ", expected " +
                                             to_string(out.probs.size()));
    }
    std::copy(channel.values().begin(), channel.values().end(), out.probs.channel(c).begin());
  }
  out.probs.validate();
  return out;
}

void write_probability_volume(const NamedVolume& volume, const fs::path& dir) {
  if (volume.class_names.size() != volume.probs.num_classes()) {
    fail(ErrorCode::DimensionMismatch, "class name count does not match channel count");
  }
  volume.probs.validate();
  fs::create_directories(dir);
  for (std::size_t c = 0; c < volume.probs.num_classes(); ++c) {
    const auto ch = volume.probs.channel(c);
    write_cmap(RasterF32(volume.probs.height(), volume.probs.width(),
                         std::vector<float>(ch.begin(), ch.end())),
               dir / channel_file_name(c));
  }
  write_class_index(volume.class_names, dir / "classes.txt");
}

}  // namespace oodseg
