/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "oodseg/synth.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>
#include <unordered_map>

#include "oodseg/error.hpp"
#include "oodseg/rng.hpp"

namespace oodseg {

namespace {

constexpr std::size_t kPlacementAttempts = 1000;
constexpr std::uint64_t kStreamPlacement = 1;
constexpr std::uint64_t kStreamNoise = 2;

constexpr std::uint8_t kBackgroundIntensity = 96;
constexpr std::uint8_t kObjectIntensity = 224;
constexpr std::uint8_t kBorderIntensity = 0;

std::uint64_t scene_key(const SceneConfig& cfg, std::size_t index, std::uint64_t stream) {
  return CounterRng::derive(CounterRng::derive(cfg.seed, index), stream);
}

bool inside_ellipse(const Rect& box, std::size_t row, std::size_t col) {
  const double rx = static_cast<double>(box.w) / 2.0;
  const double ry = static_cast<double>(box.h) / 2.0;
  const double dx = (static_cast<double>(col) + 0.5 - static_cast<double>(box.x) - rx) / rx;
  const double dy = (static_cast<double>(row) + 0.5 - static_cast<double>(box.y) - ry) / ry;
  return dx * dx + dy * dy <= 1.0;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view text, std::string_view key) {
  T value{};
  const auto* end = text.data() + text.size();
  auto [p, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || p != end) {
    fail(ErrorCode::BadConfig, "bad value '" + std::string(text) + "' for " + std::string(key));
  }
  return value;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void SceneConfig::validate() const {
  const auto bad = [](const std::string& why) { fail(ErrorCode::BadConfig, "scene config: " + why); };
  if (height == 0 || width == 0) bad("image size must be positive");
  if (min_size == 0 || min_size > max_size) bad("need 0 < min_size <= max_size");
  if (2 * ignore_border >= height || 2 * ignore_border >= width) bad("ignore border too wide");
  if (max_size > std::min(height, width) - 2 * ignore_border) {
    bad("max_size does not fit inside the image");
  }
  if (!(noise_sigma >= 0.0)) bad("noise_sigma must be >= 0");
  if (num_classes < 2) bad("num_classes must be >= 2");
  if (road_index >= num_classes) bad("road_index out of range");
  if (profile.empty()) bad("detection profile is empty");
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const auto& b = profile[i];
    if (!(b.lo > 0.0 && b.lo <= b.hi && b.hi <= 1.0)) {
      bad("band for N=" + std::to_string(b.n_patches) + " must satisfy 0 < lo <= hi <= 1");
    }
    const std::size_t side = grid_side(b.n_patches);
    if (height % side != 0 || width % side != 0) {
      bad("image size not divisible by the N=" + std::to_string(b.n_patches) + " grid");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (profile[j].n_patches == b.n_patches) bad("duplicate band for N=" + std::to_string(b.n_patches));
    }
  }
}

const DetectionBand& SceneConfig::band_for(std::size_t n_patches) const {
  for (const auto& b : profile) {
    if (b.n_patches == n_patches) return b;
  }
  fail(ErrorCode::BadConfig, "no detection band for N=" + std::to_string(n_patches));
}

SceneConfig default_scene_config() {
  SceneConfig cfg;
  cfg.profile = {{16, 0.05, 1.0}, {64, 0.005, 0.25}};
  return cfg;
}

SceneConfig mixed_size_scene_config() {
  SceneConfig cfg;
  cfg.seed = 11;
  cfg.n_objects = 6;
  cfg.min_size = 8;
  cfg.max_size = 64;
  cfg.profile = {{16, 0.1, 1.0}, {64, 0.01, 0.09}};
  cfg.noise_sigma = 0.1;
  return cfg;
}

SceneConfig parse_scene_config(std::string_view text) {
  SceneConfig cfg = default_scene_config();
  bool saw_band = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorCode::BadConfig, "scene config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key == "seed") {
      cfg.seed = parse_number<std::uint64_t>(value, key);
    } else if (key == "height") {
      cfg.height = parse_number<std::size_t>(value, key);
    } else if (key == "width") {
      cfg.width = parse_number<std::size_t>(value, key);
    } else if (key == "n_objects") {
      cfg.n_objects = parse_number<std::size_t>(value, key);
    } else if (key == "min_size") {
      cfg.min_size = parse_number<std::size_t>(value, key);
    } else if (key == "max_size") {
      cfg.max_size = parse_number<std::size_t>(value, key);
    } else if (key == "noise_sigma") {
      cfg.noise_sigma = parse_number<double>(value, key);
    } else if (key == "num_classes") {
      cfg.num_classes = parse_number<std::size_t>(value, key);
    } else if (key == "road_index") {
      cfg.road_index = parse_number<std::size_t>(value, key);
    } else if (key == "ignore_border") {
      cfg.ignore_border = parse_number<std::size_t>(value, key);
    } else if (key == "band") {
      if (!saw_band) cfg.profile.clear();
      saw_band = true;
      const auto c1 = value.find(':');
      const auto c2 = c1 == std::string_view::npos ? c1 : value.find(':', c1 + 1);
      if (c2 == std::string_view::npos) {
        fail(ErrorCode::BadConfig, "band must be <N>:<lo>:<hi>");
      }
      cfg.profile.push_back({parse_number<std::size_t>(value.substr(0, c1), key),
                             parse_number<double>(value.substr(c1 + 1, c2 - c1 - 1), key),
                             parse_number<double>(value.substr(c2 + 1), key)});
    } else {
      fail(ErrorCode::BadConfig, "unknown scene config key '" + std::string(key) + "'");
    }
  }
  cfg.validate();
  return cfg;
}

std::string format_scene_config(const SceneConfig& cfg) {
  std::ostringstream out;
  out << "seed = " << cfg.seed << "\n"
      << "height = " << cfg.height << "\n"
      << "width = " << cfg.width << "\n"
      << "n_objects = " << cfg.n_objects << "\n"
      << "min_size = " << cfg.min_size << "\n"
      << "max_size = " << cfg.max_size << "\n"
      << "noise_sigma = " << fmt_double(cfg.noise_sigma) << "\n"
      << "num_classes = " << cfg.num_classes << "\n"
      << "road_index = " << cfg.road_index << "\n"
      << "ignore_border = " << cfg.ignore_border << "\n";
  for (const auto& b : cfg.profile) {
    out << "band = " << b.n_patches << ":" << fmt_double(b.lo) << ":" << fmt_double(b.hi) << "\n";
  }
  return out.str();
}

std::vector<std::string> synthetic_class_names(const SceneConfig& cfg) {
  std::vector<std::string> names;
  for (std::size_t c = 0; c < cfg.num_classes; ++c) {
    names.push_back(c == cfg.road_index ? "road" : "class_" + std::to_string(c));
  }
  return names;
}

SyntheticScene generate_scene(const SceneConfig& cfg, std::size_t index) {
  cfg.validate();
  const std::size_t H = cfg.height;
  const std::size_t W = cfg.width;
  const std::size_t border = cfg.ignore_border;
  CounterRng rng(scene_key(cfg, index, kStreamPlacement));

  SyntheticScene scene;
  scene.object_map.assign(H * W, 0);
  std::vector<Rect> placed;
  for (std::size_t i = 0; i < cfg.n_objects; ++i) {
    bool ok = false;
    for (std::size_t attempt = 0; attempt < kPlacementAttempts && !ok; ++attempt) {
      const std::size_t w = rng.uniform_int(cfg.min_size, cfg.max_size);
      const std::size_t h = rng.uniform_int(cfg.min_size, cfg.max_size);
      const std::size_t x = rng.uniform_int(border, W - border - w);
      const std::size_t y = rng.uniform_int(border, H - border - h);
      const auto shape = rng.uniform_int(0, 1) == 0 ? SyntheticObject::Shape::Rectangle
                                                    : SyntheticObject::Shape::Ellipse;
      // One pixel of clearance on every side keeps objects 8-disconnected.
      const Rect padded{x == 0 ? 0 : x - 1, y == 0 ? 0 : y - 1, w + (x == 0 ? 1 : 2),
                        h + (y == 0 ? 1 : 2)};
      if (std::any_of(placed.begin(), placed.end(),
                      [&](const Rect& r) { return r.intersects(padded); })) {
        continue;
      }
      ok = true;
      placed.push_back({x, y, w, h});
      scene.objects.push_back({shape, {x, y, w, h}, 0});
    }
    if (!ok) {
      fail(ErrorCode::PlacementFailure, "could not place object " + std::to_string(i + 1) +
                                            " of " + std::to_string(cfg.n_objects) + " in " +
                                            std::to_string(kPlacementAttempts) + " attempts");
    }
  }

  for (std::size_t i = 0; i < scene.objects.size(); ++i) {
    auto& obj = scene.objects[i];
    const Rect& b = obj.box;
    for (std::size_t r = b.y; r < b.bottom(); ++r) {
      for (std::size_t c = b.x; c < b.right(); ++c) {
        if (obj.shape == SyntheticObject::Shape::Ellipse && !inside_ellipse(b, r, c)) continue;
        scene.object_map[r * W + c] = static_cast<std::uint32_t>(i + 1);
        ++obj.area;
      }
    }
  }

  scene.gt = LabelMask(H, W, kInDist);
  scene.image = Image8(H, W, 1, kBackgroundIntensity);
  for (std::size_t r = 0; r < H; ++r) {
    for (std::size_t c = 0; c < W; ++c) {
      const std::size_t p = r * W + c;
      if (r < border || c < border || r >= H - border || c >= W - border) {
        scene.gt[p] = kIgnore;
        scene.image.data[p] = kBorderIntensity;
      } else if (scene.object_map[p] != 0) {
        scene.gt[p] = kOod;
        scene.image.data[p] = kObjectIntensity;
      }
    }
  }
  scene.probs = simulate_probs(scene, cfg);
  return scene;
}

RasterF32 simulate_confidence(const SyntheticScene& scene, const PatchGrid& grid,
                              const SceneConfig& cfg, std::size_t index) {
  if (scene.gt.size() != grid.image) {
    fail(ErrorCode::DimensionMismatch, "scene is " + to_string(scene.gt.size()) +
                                           ", grid covers " + to_string(grid.image));
  }
  const DetectionBand& band = cfg.band_for(grid.count());
  const std::size_t W = grid.image.width;
  RasterF32 out(grid.image.height, W, kBackgroundConfidence);

  const PatchScheme layout = to_scheme(grid);
  std::unordered_map<std::uint32_t, std::size_t> overlap;
  for (const Rect& patch : layout.rects) {
    overlap.clear();
    for (std::size_t r = patch.y; r < patch.bottom(); ++r) {
      for (std::size_t c = patch.x; c < patch.right(); ++c) {
        if (const auto id = scene.object_map[r * W + c]; id != 0) ++overlap[id];
      }
    }
    if (overlap.empty()) continue;
    const double patch_area = static_cast<double>(patch.area());
    for (std::size_t r = patch.y; r < patch.bottom(); ++r) {
      for (std::size_t c = patch.x; c < patch.right(); ++c) {
        const auto id = scene.object_map[r * W + c];
        if (id == 0) continue;
        const double ratio = static_cast<double>(overlap[id]) / patch_area;
        out.at(r, c) = ratio >= band.lo && ratio <= band.hi ? kDetectedConfidence
                                                            : kMissedConfidence;
      }
    }
  }

  if (cfg.noise_sigma > 0.0) {
    const std::uint64_t key =
        CounterRng::derive(scene_key(cfg, index, kStreamNoise), grid.count());
    for (std::size_t p = 0; p < out.pixel_count(); ++p) {
      const double v = static_cast<double>(out[p]) + cfg.noise_sigma * CounterRng::normal_at(key, p);
      out[p] = static_cast<float>(std::clamp(v, 0.0, 1.0));
    }
  }
  return out;
}

ProbabilityVolume simulate_probs(const SyntheticScene& scene, const SceneConfig& cfg) {
  const std::size_t C = cfg.num_classes;
  if (C < 2 || cfg.road_index >= C) {
    fail(ErrorCode::BadConfig, "need >= 2 classes and a valid road channel");
  }
  ProbabilityVolume probs(scene.gt.height(), scene.gt.width(), C);
  const float uniform = static_cast<float>(1.0 / static_cast<double>(C));
  const float rest = static_cast<float>((1.0 - static_cast<double>(kRoadProbability)) /
                                        static_cast<double>(C - 1));
  for (std::size_t p = 0; p < probs.pixel_count(); ++p) {
    const bool ood = scene.gt[p] == kOod;
    for (std::size_t c = 0; c < C; ++c) {
      probs.at(p, c) = ood ? uniform : (c == cfg.road_index ? kRoadProbability : rest);
    }
  }
  return probs;
}

}  // namespace oodseg
