/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "oodseg/error.hpp"

namespace oodseg {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::TruncatedFile: return "TruncatedFile";
    case ErrorCode::TrailingData: return "TrailingData";
    case ErrorCode::ValueOutOfRange: return "ValueOutOfRange";
    case ErrorCode::DimensionOverflow: return "DimensionOverflow";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::UnsupportedPng: return "UnsupportedPng";
    case ErrorCode::IllegalLabelCode: return "IllegalLabelCode";
    case ErrorCode::BadProbabilities: return "BadProbabilities";
    case ErrorCode::OverlappingPatches: return "OverlappingPatches";
    case ErrorCode::CoverageGap: return "CoverageGap";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::NotPerfectSquare: return "NotPerfectSquare";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroScales: return "ZeroScales";
    case ErrorCode::BadWeights: return "BadWeights";
    case ErrorCode::MissingPatch: return "MissingPatch";
    case ErrorCode::TooFewClasses: return "TooFewClasses";
    case ErrorCode::BadClassIndex: return "BadClassIndex";
    case ErrorCode::NoEvaluablePixels: return "NoEvaluablePixels";
    case ErrorCode::NoPositives: return "NoPositives";
    case ErrorCode::NoNegatives: return "NoNegatives";
    case ErrorCode::NoGtSegments: return "NoGtSegments";
    case ErrorCode::PlacementFailure: return "PlacementFailure";
    case ErrorCode::MalformedReport: return "MalformedReport";
    case ErrorCode::BadConfig: return "BadConfig";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      message_(message) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace oodseg
