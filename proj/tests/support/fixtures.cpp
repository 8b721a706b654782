/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "fixtures.hpp"

#include <atomic>
#include <fstream>
#include <iterator>
#include <vector>

#include <unistd.h>

namespace oodseg::testing {

namespace fs = std::filesystem;

TempDir::TempDir() {
  static std::atomic<unsigned> counter{0};
  path_ = fs::temp_directory_path() /
          ("oodseg_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ignored;
  fs::remove_all(path_, ignored);
}

RasterF32 random_raster(std::size_t height, std::size_t width, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<float> dist(0.0f, 1.0f);
  RasterF32 r(height, width);
  for (auto& v : r.values()) v = dist(gen);
  return r;
}

LabelMask random_mask(std::size_t height, std::size_t width, std::uint64_t seed, double p_ood,
                      double p_ignore) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  LabelMask m(height, width);
  for (std::size_t i = 0; i < m.pixel_count(); ++i) {
    const double u = dist(gen);
    m[i] = u < p_ood ? kOod : (u < p_ood + p_ignore ? kIgnore : kInDist);
  }
  return m;
}

Image8 random_image(std::size_t height, std::size_t width, std::size_t channels,
                    std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<int> dist(0, 255);
  Image8 img(height, width, channels);
  for (auto& v : img.data) v = static_cast<std::uint8_t>(dist(gen));
  return img;
}

bool bit_identical_files(const fs::path& a, const fs::path& b) {
  std::ifstream fa(a, std::ios::binary);
  std::ifstream fb(b, std::ios::binary);
  if (!fa || !fb) return false;
  const std::vector<char> da((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
  const std::vector<char> db((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
  return da == db;
}

}  // namespace oodseg::testing
