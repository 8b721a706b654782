/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "oodseg/fusion.hpp"

#include <algorithm>
#include <cmath>

#include "oodseg/error.hpp"

namespace oodseg {

std::string_view to_string(UncertaintyKind kind) noexcept {
  return kind == UncertaintyKind::Entropy ? "entropy" : "road";
}

RasterF32 entropy_map(const ProbabilityVolume& probs) {
  const std::size_t num_classes = probs.num_classes();
  if (num_classes < 2) {
    fail(ErrorCode::TooFewClasses, "entropy needs at least 2 classes, got " +
                                       std::to_string(num_classes));
  }
  probs.validate();
  const double norm = std::log(static_cast<double>(num_classes));
  RasterF32 out(probs.height(), probs.width());
  for (std::size_t p = 0; p < probs.pixel_count(); ++p) {
    double total = 0.0;
    for (std::size_t c = 0; c < num_classes; ++c) total += probs.at(p, c);
    double h = 0.0;
    for (std::size_t c = 0; c < num_classes; ++c) {
      const double q = static_cast<double>(probs.at(p, c)) / total;
      if (q >= kEntropyFloor) h -= q * std::log(q);
    }
    out[p] = static_cast<float>(std::clamp(h / norm, 0.0, 1.0));
  }
  return out;
}

RasterF32 road_uncertainty(const ProbabilityVolume& probs, const ClassIndex& road) {
  if (road.index >= probs.num_classes()) {
    fail(ErrorCode::BadClassIndex, "road index " + std::to_string(road.index) +
                                       " but the volume has " +
                                       std::to_string(probs.num_classes()) + " classes");
  }
  probs.validate();
  const auto channel = probs.channel(road.index);
  RasterF32 out(probs.height(), probs.width());
  for (std::size_t p = 0; p < channel.size(); ++p) {
    out[p] = static_cast<float>(std::clamp(1.0 - static_cast<double>(channel[p]), 0.0, 1.0));
  }
  return out;
}

ClassIndex resolve_road_class(std::span<const std::string> class_names,
                              std::optional<std::size_t> explicit_index, std::string_view name) {
  const auto it = std::find(class_names.begin(), class_names.end(), name);
  if (it != class_names.end()) {
    return {static_cast<std::size_t>(it - class_names.begin()), std::string(name)};
  }
  if (explicit_index) {
    if (*explicit_index >= class_names.size()) {
      fail(ErrorCode::BadClassIndex, "road index " + std::to_string(*explicit_index) +
                                         " out of range for " +
                                         std::to_string(class_names.size()) + " classes");
    }
    return {*explicit_index, class_names[*explicit_index]};
  }
  fail(ErrorCode::BadClassIndex,
       "no class named '" + std::string(name) + "' and no explicit road index");
}

RasterF32 uncertainty_map(const ProbabilityVolume& probs, UncertaintyKind kind,
                          const ClassIndex& road) {
  return kind == UncertaintyKind::Entropy ? entropy_map(probs) : road_uncertainty(probs, road);
}

RasterF32 fuse(const RasterF32& conf, const RasterF32& unc) {
  if (conf.size() != unc.size()) {
    fail(ErrorCode::DimensionMismatch, "confidence map is " + to_string(conf.size()) +
                                           ", uncertainty map is " + to_string(unc.size()));
  }
  RasterF32 out(conf.height(), conf.width());
  for (std::size_t p = 0; p < conf.pixel_count(); ++p) out[p] = conf[p] * unc[p];
  return out;
}

ClassMap argmax_prediction(const ProbabilityVolume& probs) {
  probs.validate();
  ClassMap out{probs.height(), probs.width(), std::vector<std::uint32_t>(probs.pixel_count(), 0)};
  for (std::size_t p = 0; p < probs.pixel_count(); ++p) {
    std::uint32_t best = 0;
    float best_value = probs.at(p, 0);
    for (std::size_t c = 1; c < probs.num_classes(); ++c) {
      if (probs.at(p, c) > best_value) {
        best_value = probs.at(p, c);
        best = static_cast<std::uint32_t>(c);
      }
    }
    out.classes[p] = best;
  }
  return out;
}

}  // namespace oodseg
