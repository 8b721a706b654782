/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "oodseg/error.hpp"
#include "oodseg/metrics.hpp"
#include "oodseg/parallel.hpp"

namespace oodseg {

namespace {

struct ImageSummary {
  ClassScores scores;
  SegmentStats segments;
  PixelCounts pixels;
};

ImageSummary summarize_image(const EvalPair& pair, const EvalConfig& config, bool segments) {
  const auto& [score, gt] = pair;
  score.validate();
  gt.validate();
  ImageSummary s;
  s.scores.append(score, gt);
  s.pixels = {s.scores.positives.size(), s.scores.negatives.size(), gt.count(kIgnore)};
  if (segments) {
    s.segments = segment_stats(score, gt, config.binarize_at, config.connectivity);
  }
  return s;
}

// Merges per-image summaries in index order.
ImageSummary pool(std::vector<ImageSummary>& parts) {
  ImageSummary total;
  std::size_t pos = 0;
  std::size_t neg = 0;
  for (const auto& p : parts) {
    pos += p.scores.positives.size();
    neg += p.scores.negatives.size();
  }
  total.scores.positives.reserve(pos);
  total.scores.negatives.reserve(neg);
  for (auto& p : parts) {
    total.scores.append(std::move(p.scores));
    total.segments.append(p.segments);
    total.pixels.ood += p.pixels.ood;
    total.pixels.in_dist += p.pixels.in_dist;
    total.pixels.ignore += p.pixels.ignore;
  }
  parts.clear();
  return total;
}

std::vector<ImageSummary> summarize_all(std::size_t count, const EvalLoader& load,
                                        const EvalConfig& config, bool segments) {
  if (count == 0) fail(ErrorCode::NoEvaluablePixels, "dataset has no images");
  std::vector<ImageSummary> parts(count);
  parallel_for(count, config.threads, [&](std::size_t i) {
    parts[i] = summarize_image(load(i), config, segments);
  });
  return parts;
}

}  // namespace

EvalReport evaluate_dataset(std::size_t count, const EvalLoader& load, const EvalConfig& config) {
  auto parts = summarize_all(count, load, config, true);
  ImageSummary total = pool(parts);
  if (total.pixels.ood + total.pixels.in_dist == 0) {
    fail(ErrorCode::NoEvaluablePixels, "every pixel of the dataset is marked ignore");
  }
  total.scores.sort();
  const PixelMetrics pm = pixel_metrics(total.scores);
  const SegmentSummary seg = summarize_segments(total.segments, default_taus());

  EvalReport report;
  report.images = count;
  report.binarize_at = config.binarize_at;
  report.connectivity = static_cast<int>(config.connectivity);
  report.auprc = pm.auprc;
  report.fpr95 = pm.fpr95;
  report.mean_siou = seg.mean_siou;
  report.mean_ppv = seg.mean_ppv;
  report.mean_f1 = seg.mean_f1;
  report.per_threshold = seg.per_threshold;
  report.pixels = total.pixels;
  report.gt_segments = seg.gt_segments;
  report.predicted_segments = seg.predicted_segments;
  report.no_predicted_segments = seg.no_predicted_segments;
  return report;
}

EvalReport evaluate_dataset(std::span<const EvalPair> pairs, const EvalConfig& config) {
  return evaluate_dataset(
      pairs.size(), [&](std::size_t i) { return pairs[i]; }, config);
}

PixelMetrics evaluate_pixels(std::size_t count, const EvalLoader& load, std::size_t threads) {
  EvalConfig config;
  config.threads = threads;
  auto parts = summarize_all(count, load, config, false);
  ImageSummary total = pool(parts);
  total.scores.sort();
  return pixel_metrics(total.scores);
}

}  // namespace oodseg
