/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "oodseg/raster.hpp"

namespace oodseg::testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

RasterF32 random_raster(std::size_t height, std::size_t width, std::uint64_t seed);

// Each pixel OOD with probability p_ood, IGNORE with p_ignore, else in-dist.
LabelMask random_mask(std::size_t height, std::size_t width, std::uint64_t seed, double p_ood,
                      double p_ignore = 0.0);

Image8 random_image(std::size_t height, std::size_t width, std::size_t channels,
                    std::uint64_t seed);

bool bit_identical_files(const std::filesystem::path& a, const std::filesystem::path& b);

}  // namespace oodseg::testing
