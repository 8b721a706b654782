/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "oodseg/raster.hpp"

namespace oodseg {

struct ClassIndex {
  std::size_t index = 0;
  std::string name;
};

enum class UncertaintyKind { Entropy, Road };

std::string_view to_string(UncertaintyKind kind) noexcept;

// Probabilities below this are treated as exactly zero in the entropy sum.
inline constexpr double kEntropyFloor = 1e-12;

// Normalized Shannon entropy per pixel, -sum p log p / log |C|, in [0,1].
// Each pixel's distribution is renormalized to sum 1 before evaluation.
RasterF32 entropy_map(const ProbabilityVolume& probs);

// 1 - p(road) per pixel.
RasterF32 road_uncertainty(const ProbabilityVolume& probs, const ClassIndex& road);

// Resolves the road channel by name (case-sensitive) in the class list,
// falling back to `explicit_index` when given. Throws BadClassIndex.
ClassIndex resolve_road_class(std::span<const std::string> class_names,
                              std::optional<std::size_t> explicit_index,
                              std::string_view name = "road");

RasterF32 uncertainty_map(const ProbabilityVolume& probs, UncertaintyKind kind,
                          const ClassIndex& road);

// Component-wise product of a confidence map and an uncertainty map.
RasterF32 fuse(const RasterF32& conf, const RasterF32& unc);

// Per-pixel argmax; ties go to the lowest class index.
ClassMap argmax_prediction(const ProbabilityVolume& probs);

}  // namespace oodseg
