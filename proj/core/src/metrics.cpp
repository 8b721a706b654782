/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "oodseg/metrics.hpp"

#include <algorithm>
#include <array>
#include <bit>

#include "oodseg/error.hpp"

namespace oodseg {

namespace {

void check_same_size(const RasterF32& score, const LabelMask& gt) {
  if (score.size() != gt.size()) {
    fail(ErrorCode::DimensionMismatch, "score map is " + to_string(score.size()) +
                                           ", label mask is " + to_string(gt.size()));
  }
}

// Scores are validated to [0,1], so their IEEE bit patterns order like the
// values once -0.0 is folded into +0.0.
inline std::uint32_t score_key(float v) { return std::bit_cast<std::uint32_t>(v + 0.0f); }

// LSD radix sort on 11/11/10-bit digits; ascending.
void radix_sort_scores(std::vector<float>& values) {
  if (values.size() < 2048) {
    std::sort(values.begin(), values.end(),
              [](float a, float b) { return score_key(a) < score_key(b); });
    return;
  }
  std::vector<std::uint32_t> keys(values.size());
  std::vector<std::uint32_t> buffer(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) keys[i] = score_key(values[i]);
  constexpr std::array<int, 3> kShift = {0, 11, 22};
  for (const int shift : kShift) {
    std::array<std::size_t, 2048> counts{};
    for (const std::uint32_t k : keys) ++counts[(k >> shift) & 0x7FF];
    std::size_t total = 0;
    for (auto& c : counts) {
      const std::size_t n = c;
      c = total;
      total += n;
    }
    for (const std::uint32_t k : keys) buffer[counts[(k >> shift) & 0x7FF]++] = k;
    keys.swap(buffer);
  }
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = std::bit_cast<float>(keys[i]);
}

// Walks distinct thresholds from the highest score down. `visit(threshold,
// tp, fp)` receives cumulative counts of scores >= threshold and returns
// false to stop early.
template <typename Visit>
void walk_thresholds(const ClassScores& sorted, Visit visit) {
  const auto& pos = sorted.positives;
  const auto& neg = sorted.negatives;
  std::size_t i = pos.size();
  std::size_t j = neg.size();
  std::size_t tp = 0;
  std::size_t fp = 0;
  while (i > 0 || j > 0) {
    std::uint32_t key = 0;
    if (i > 0) key = score_key(pos[i - 1]);
    if (j > 0) key = std::max(key, score_key(neg[j - 1]));
    while (i > 0 && score_key(pos[i - 1]) == key) {
      --i;
      ++tp;
    }
    while (j > 0 && score_key(neg[j - 1]) == key) {
      --j;
      ++fp;
    }
    if (!visit(std::bit_cast<float>(key), tp, fp)) return;
  }
}

// Accumulates sum(dTP * P_k) and divides by the positive count once, so a
// run of precision-1 blocks sums to exactly 1.
double average_precision(const ClassScores& sorted) {
  const double total_pos = static_cast<double>(sorted.positives.size());
  double weighted = 0.0;
  std::size_t prev_tp = 0;
  walk_thresholds(sorted, [&](float, std::size_t tp, std::size_t fp) {
    if (tp != prev_tp) {
      const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
      weighted += static_cast<double>(tp - prev_tp) * precision;
      prev_tp = tp;
    }
    return tp < sorted.positives.size();
  });
  return std::min(1.0, weighted / total_pos);
}

double fpr_at(const ClassScores& sorted, double target_tpr) {
  const double total_pos = static_cast<double>(sorted.positives.size());
  const double total_neg = static_cast<double>(sorted.negatives.size());
  double fpr = 1.0;
  walk_thresholds(sorted, [&](float, std::size_t tp, std::size_t fp) {
    if (static_cast<double>(tp) / total_pos >= target_tpr) {
      fpr = static_cast<double>(fp) / total_neg;
      return false;
    }
    return true;
  });
  return fpr;
}

}  // namespace

ScoredPixels collect_scored_pixels(const RasterF32& score, const LabelMask& gt) {
  check_same_size(score, gt);
  ScoredPixels out;
  const std::size_t evaluable = gt.pixel_count() - gt.count(kIgnore);
  out.scores.reserve(evaluable);
  out.labels.reserve(evaluable);
  for (std::size_t p = 0; p < gt.pixel_count(); ++p) {
    const std::uint8_t label = gt[p];
    if (label == kIgnore) continue;
    if (label != kOod && label != kInDist) {
      fail(ErrorCode::IllegalLabelCode, "label " + std::to_string(label) + " at pixel " +
                                            std::to_string(p));
    }
    out.scores.push_back(score[p]);
    out.labels.push_back(label);
  }
  if (out.scores.empty()) {
    fail(ErrorCode::NoEvaluablePixels, "every pixel is marked ignore");
  }
  return out;
}

ClassScores ClassScores::from(const ScoredPixels& pixels) {
  if (pixels.scores.size() != pixels.labels.size()) {
    fail(ErrorCode::DimensionMismatch, "scores and labels differ in length");
  }
  ClassScores out;
  for (std::size_t i = 0; i < pixels.scores.size(); ++i) {
    (pixels.labels[i] == kOod ? out.positives : out.negatives).push_back(pixels.scores[i]);
  }
  return out;
}

void ClassScores::append(const RasterF32& score, const LabelMask& gt) {
  check_same_size(score, gt);
  for (std::size_t p = 0; p < gt.pixel_count(); ++p) {
    const std::uint8_t label = gt[p];
    if (label == kOod) {
      positives.push_back(score[p]);
    } else if (label == kInDist) {
      negatives.push_back(score[p]);
    }
  }
}

void ClassScores::append(ClassScores&& other) {
  positives.insert(positives.end(), other.positives.begin(), other.positives.end());
  negatives.insert(negatives.end(), other.negatives.begin(), other.negatives.end());
  other = ClassScores{};
}

void ClassScores::sort() {
  radix_sort_scores(positives);
  radix_sort_scores(negatives);
}

std::vector<PRPoint> pr_curve(const ScoredPixels& pixels) {
  ClassScores sorted = ClassScores::from(pixels);
  if (sorted.positives.empty()) fail(ErrorCode::NoPositives, "no OOD pixels");
  sorted.sort();
  const double total_pos = static_cast<double>(sorted.positives.size());
  std::vector<PRPoint> curve;
  walk_thresholds(sorted, [&](float t, std::size_t tp, std::size_t fp) {
    curve.push_back({t, static_cast<double>(tp) / static_cast<double>(tp + fp),
                     static_cast<double>(tp) / total_pos, tp, fp});
    return true;
  });
  return curve;
}

double auprc(const ScoredPixels& pixels) {
  ClassScores sorted = ClassScores::from(pixels);
  if (sorted.positives.empty()) fail(ErrorCode::NoPositives, "no OOD pixels");
  sorted.sort();
  return average_precision(sorted);
}

double fpr_at_tpr(const ScoredPixels& pixels, double target_tpr) {
  ClassScores sorted = ClassScores::from(pixels);
  if (sorted.positives.empty()) fail(ErrorCode::NoPositives, "no OOD pixels");
  if (sorted.negatives.empty()) fail(ErrorCode::NoNegatives, "no in-distribution pixels");
  sorted.sort();
  return fpr_at(sorted, target_tpr);
}

PixelMetrics pixel_metrics(const ClassScores& sorted, double target_tpr) {
  if (sorted.positives.empty()) fail(ErrorCode::NoPositives, "no OOD pixels");
  if (sorted.negatives.empty()) fail(ErrorCode::NoNegatives, "no in-distribution pixels");
  return {average_precision(sorted), fpr_at(sorted, target_tpr), sorted.positives.size(),
          sorted.negatives.size()};
}

}  // namespace oodseg
