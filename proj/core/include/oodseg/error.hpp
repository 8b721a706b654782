/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace oodseg {

enum class ErrorCode {
  // raster_io
  BadMagic,
  TruncatedFile,
  TrailingData,
  ValueOutOfRange,
  DimensionOverflow,
  IoFailure,
  UnsupportedPng,
  IllegalLabelCode,
  BadProbabilities,
  OverlappingPatches,
  CoverageGap,
  MalformedLine,
  // tiling
  NotPerfectSquare,
  NotDivisible,
  DimensionMismatch,
  // aggregate
  ZeroScales,
  BadWeights,
  MissingPatch,
  // fusion
  TooFewClasses,
  BadClassIndex,
  // metrics
  NoEvaluablePixels,
  NoPositives,
  NoNegatives,
  NoGtSegments,
  // synth
  PlacementFailure,
  // cli
  MalformedReport,
  BadConfig,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure surfaced by the library carries one of the codes above so the
// CLI can report it in a structured way.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  // The message without the leading code name.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace oodseg
