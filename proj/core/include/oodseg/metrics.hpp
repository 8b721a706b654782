/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "oodseg/components.hpp"
#include "oodseg/raster.hpp"

namespace oodseg {

// ---------------------------------------------------------------------------
// Pixel level

// Evaluable pixels of one or more images: parallel score / label lists with
// IGNORE pixels removed. Labels are kOod or kInDist.
struct ScoredPixels {
  std::vector<float> scores;
  std::vector<std::uint8_t> labels;

  std::size_t size() const noexcept { return scores.size(); }
};

// Drops IGNORE pixels, keeps row-major order. Throws DimensionMismatch or
// NoEvaluablePixels.
ScoredPixels collect_scored_pixels(const RasterF32& score, const LabelMask& gt);

// Scores grouped by label. After sort(), both lists are ascending; the curve
// metrics walk them from the top.
struct ClassScores {
  std::vector<float> positives;
  std::vector<float> negatives;

  static ClassScores from(const ScoredPixels& pixels);
  void append(const RasterF32& score, const LabelMask& gt);
  void append(ClassScores&& other);
  void sort();
};

struct PRPoint {
  double threshold = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
};

// One point per distinct score value, thresholds descending (recall
// non-decreasing along the list). Pixels with score >= threshold are
// predicted OOD; tied scores enter as one block.
std::vector<PRPoint> pr_curve(const ScoredPixels& pixels);

// Average precision: sum over descending thresholds of
// (R_k - R_{k-1}) * P_k. Throws NoPositives.
double auprc(const ScoredPixels& pixels);

// FPR at the largest threshold whose TPR >= target_tpr. Throws NoPositives /
// NoNegatives.
double fpr_at_tpr(const ScoredPixels& pixels, double target_tpr = 0.95);

struct PixelMetrics {
  double auprc = 0.0;
  double fpr95 = 0.0;
  std::size_t positives = 0;
  std::size_t negatives = 0;
};

// Both curve metrics in one pass over sorted scores.
PixelMetrics pixel_metrics(const ClassScores& sorted, double target_tpr = 0.95);

// ---------------------------------------------------------------------------
// Segment level

inline constexpr double kDefaultBinarizeAt = 0.5;

// 0.25, 0.30, ..., 0.75.
std::vector<double> default_taus();

// Per-segment ratios of one or more images. `siou` has one entry per ground
// truth OOD segment, `ppv` one per predicted segment.
struct SegmentStats {
  std::vector<double> siou;
  std::vector<double> ppv;

  void append(const SegmentStats& other);
};

// Prediction = score >= binarize_at outside IGNORE pixels. For ground-truth
// segment k with K = union of predicted segments meeting k:
//   sIoU(k) = |k & K| / (|k | K| - |K \ k restricted to other GT segments|)
// and PPV(j) = |j & GT_OOD| / |j| for predicted segment j.
SegmentStats segment_stats(const RasterF32& score, const LabelMask& gt, double binarize_at,
                           Connectivity connectivity = Connectivity::Eight);

struct ThresholdRow {
  double tau = 0.0;
  std::size_t tp = 0;
  std::size_t fn = 0;
  std::size_t fp = 0;
  double f1 = 0.0;
};

// Means are percentages in [0,100]. With no predicted segments mean_ppv is 0
// and no_predicted_segments is set.
struct SegmentSummary {
  double mean_siou = 0.0;
  double mean_ppv = 0.0;
  double mean_f1 = 0.0;
  std::vector<ThresholdRow> per_threshold;
  std::size_t gt_segments = 0;
  std::size_t predicted_segments = 0;
  bool no_predicted_segments = false;
};

// TP(tau) = #{sIoU > tau}, FN = #GT - TP, FP = #{PPV <= tau},
// F1 = 2TP / (2TP + FN + FP). Throws NoGtSegments.
SegmentSummary summarize_segments(const SegmentStats& stats, std::span<const double> taus);

SegmentSummary segment_metrics(const RasterF32& score, const LabelMask& gt,
                               double binarize_at = kDefaultBinarizeAt,
                               std::span<const double> taus = {},
                               Connectivity connectivity = Connectivity::Eight);

// ---------------------------------------------------------------------------
// Dataset level

struct PixelCounts {
  std::size_t ood = 0;
  std::size_t in_dist = 0;
  std::size_t ignore = 0;
};

struct EvalReport {
  std::string label;
  std::size_t images = 0;
  double binarize_at = kDefaultBinarizeAt;
  int connectivity = 8;
  double auprc = 0.0;
  double fpr95 = 0.0;
  double mean_siou = 0.0;
  double mean_ppv = 0.0;
  double mean_f1 = 0.0;
  std::vector<ThresholdRow> per_threshold;
  PixelCounts pixels;
  std::size_t gt_segments = 0;
  std::size_t predicted_segments = 0;
  bool no_predicted_segments = false;
};

struct EvalConfig {
  double binarize_at = kDefaultBinarizeAt;
  Connectivity connectivity = Connectivity::Eight;
  std::size_t threads = 1;
};

using EvalPair = std::pair<RasterF32, LabelMask>;
// Loads image i of the dataset; called concurrently from worker threads.
using EvalLoader = std::function<EvalPair(std::size_t)>;

// Pixel metrics pool every image's evaluable pixels; segment metrics pool all
// images' segments before averaging. Results do not depend on `threads`.
EvalReport evaluate_dataset(std::size_t count, const EvalLoader& load, const EvalConfig& config);
EvalReport evaluate_dataset(std::span<const EvalPair> pairs, const EvalConfig& config);

// Pixel metrics only, pooled the same way.
PixelMetrics evaluate_pixels(std::size_t count, const EvalLoader& load, std::size_t threads);

}  // namespace oodseg
