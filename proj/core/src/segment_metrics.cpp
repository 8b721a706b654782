/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include <algorithm>
#include <utility>

#include "oodseg/error.hpp"
#include "oodseg/metrics.hpp"

namespace oodseg {

std::vector<double> default_taus() {
  std::vector<double> taus;
  for (int i = 0; i <= 10; ++i) taus.push_back(static_cast<double>(25 + 5 * i) / 100.0);
  return taus;
}

void SegmentStats::append(const SegmentStats& other) {
  siou.insert(siou.end(), other.siou.begin(), other.siou.end());
  ppv.insert(ppv.end(), other.ppv.begin(), other.ppv.end());
}

SegmentStats segment_stats(const RasterF32& score, const LabelMask& gt, double binarize_at,
                           Connectivity connectivity) {
  if (score.size() != gt.size()) {
    fail(ErrorCode::DimensionMismatch, "score map is " + to_string(score.size()) +
                                           ", label mask is " + to_string(gt.size()));
  }
  if (!(binarize_at >= 0.0 && binarize_at <= 1.0)) {
    fail(ErrorCode::BadConfig, "binarization threshold must lie in [0,1]");
  }
  const std::size_t n = gt.pixel_count();
  BinaryMask gt_mask(gt.height(), gt.width());
  BinaryMask pred_mask(gt.height(), gt.width());
  for (std::size_t p = 0; p < n; ++p) {
    gt_mask.bits[p] = gt[p] == kOod;
    pred_mask.bits[p] = gt[p] != kIgnore && static_cast<double>(score[p]) >= binarize_at;
  }
  const Components gt_cc = connected_components(gt_mask, connectivity);
  const Components pred_cc = connected_components(pred_mask, connectivity);

  // Per predicted segment: how many of its pixels are ground-truth OOD.
  std::vector<std::size_t> pred_on_ood(pred_cc.segments.size(), 0);
  // Per GT segment: how many of its pixels are predicted.
  std::vector<std::size_t> gt_hit(gt_cc.segments.size(), 0);
  // (gt segment, predicted segment) pairs that touch.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> touching;
  for (std::size_t p = 0; p < n; ++p) {
    const std::uint32_t g = gt_cc.labels[p];
    const std::uint32_t k = pred_cc.labels[p];
    if (g == 0 || k == 0) continue;
    ++pred_on_ood[k - 1];
    ++gt_hit[g - 1];
    touching.emplace_back(g, k);
  }
  std::sort(touching.begin(), touching.end());
  touching.erase(std::unique(touching.begin(), touching.end()), touching.end());

  SegmentStats stats;
  stats.siou.assign(gt_cc.segments.size(), 0.0);
  std::size_t t = 0;
  for (std::size_t g = 0; g < gt_cc.segments.size(); ++g) {
    std::size_t union_pred_area = 0;  // |K|
    std::size_t union_pred_ood = 0;   // |K & GT_OOD|
    for (; t < touching.size() && touching[t].first == g + 1; ++t) {
      const std::uint32_t k = touching[t].second;
      union_pred_area += pred_cc.segments[k - 1].area();
      union_pred_ood += pred_on_ood[k - 1];
    }
    const std::size_t area = gt_cc.segments[g].area();
    const std::size_t inter = gt_hit[g];
    const std::size_t uni = area + union_pred_area - inter;
    const std::size_t adjustment = union_pred_ood - inter;
    stats.siou[g] = static_cast<double>(inter) / static_cast<double>(uni - adjustment);
  }
  stats.ppv.reserve(pred_cc.segments.size());
  for (std::size_t k = 0; k < pred_cc.segments.size(); ++k) {
    stats.ppv.push_back(static_cast<double>(pred_on_ood[k]) /
                        static_cast<double>(pred_cc.segments[k].area()));
  }
  return stats;
}

SegmentSummary summarize_segments(const SegmentStats& stats, std::span<const double> taus) {
  if (stats.siou.empty()) {
    fail(ErrorCode::NoGtSegments, "no ground-truth OOD segments to evaluate");
  }
  std::vector<double> default_list;
  if (taus.empty()) {
    default_list = default_taus();
    taus = default_list;
  }
  SegmentSummary out;
  out.gt_segments = stats.siou.size();
  out.predicted_segments = stats.ppv.size();
  out.no_predicted_segments = stats.ppv.empty();

  double siou_sum = 0.0;
  for (const double v : stats.siou) siou_sum += v;
  out.mean_siou = 100.0 * siou_sum / static_cast<double>(stats.siou.size());
  if (!stats.ppv.empty()) {
    double ppv_sum = 0.0;
    for (const double v : stats.ppv) ppv_sum += v;
    out.mean_ppv = 100.0 * ppv_sum / static_cast<double>(stats.ppv.size());
  }

  double f1_sum = 0.0;
  for (const double tau : taus) {
    ThresholdRow row;
    row.tau = tau;
    row.tp = static_cast<std::size_t>(
        std::count_if(stats.siou.begin(), stats.siou.end(), [&](double v) { return v > tau; }));
    row.fn = stats.siou.size() - row.tp;
    row.fp = static_cast<std::size_t>(
        std::count_if(stats.ppv.begin(), stats.ppv.end(), [&](double v) { return v <= tau; }));
    row.f1 = 2.0 * static_cast<double>(row.tp) /
             static_cast<double>(2 * row.tp + row.fn + row.fp);
    f1_sum += row.f1;
    out.per_threshold.push_back(row);
  }
  out.mean_f1 = 100.0 * f1_sum / static_cast<double>(taus.size());
  return out;
}

SegmentSummary segment_metrics(const RasterF32& score, const LabelMask& gt, double binarize_at,
                               std::span<const double> taus, Connectivity connectivity) {
  return summarize_segments(segment_stats(score, gt, binarize_at, connectivity), taus);
}

}  // namespace oodseg
