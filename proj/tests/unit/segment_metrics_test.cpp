/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "oodseg/error.hpp"
#include "oodseg/metrics.hpp"

namespace oodseg {
namespace {

void paint(LabelMask& m, std::size_t x, std::size_t y, std::size_t w, std::size_t h, std::uint8_t v) {
  for (std::size_t r = y; r < y + h; ++r) {
    for (std::size_t c = x; c < x + w; ++c) m.at(r, c) = v;
  }
}

void paint(RasterF32& s, std::size_t x, std::size_t y, std::size_t w, std::size_t h, float v) {
  for (std::size_t r = y; r < y + h; ++r) {
    for (std::size_t c = x; c < x + w; ++c) s.at(r, c) = v;
  }
}

void expect_matches_oracle(const RasterF32& score, const LabelMask& gt, double binarize,
                           Connectivity conn) {
  const SegmentStats stats = segment_stats(score, gt, binarize, conn);
  const auto oracle = testing::oracle_segments(
      gt.height(), gt.width(), std::vector<float>(score.values().begin(), score.values().end()),
      std::vector<std::uint8_t>(gt.labels().begin(), gt.labels().end()), binarize,
      static_cast<int>(conn));
  ASSERT_EQ(stats.siou.size(), oracle.siou.size());
  ASSERT_EQ(stats.ppv.size(), oracle.ppv.size());
  for (std::size_t i = 0; i < oracle.siou.size(); ++i) EXPECT_NEAR(stats.siou[i], oracle.siou[i], 1e-12);
  for (std::size_t i = 0; i < oracle.ppv.size(); ++i) EXPECT_NEAR(stats.ppv[i], oracle.ppv[i], 1e-12);
  if (oracle.siou.empty()) return;
  const SegmentSummary s = summarize_segments(stats, {});
  ASSERT_EQ(s.per_threshold.size(), 11u);
  for (std::size_t t = 0; t < 11; ++t) {
    EXPECT_EQ(s.per_threshold[t].tp, oracle.tp[t]);
    EXPECT_EQ(s.per_threshold[t].fn, oracle.fn[t]);
    EXPECT_EQ(s.per_threshold[t].fp, oracle.fp[t]);
  }
  EXPECT_NEAR(s.mean_siou, oracle.mean_siou, 1e-12);
  EXPECT_NEAR(s.mean_ppv, oracle.mean_ppv, 1e-12);
  EXPECT_NEAR(s.mean_f1, oracle.mean_f1, 1e-12);
}

TEST(Taus, ElevenStepsOfFive) {
  const auto t = default_taus();
  ASSERT_EQ(t.size(), 11u);
  EXPECT_EQ(t.front(), 0.25);
  EXPECT_EQ(t[1], 0.30);
  EXPECT_EQ(t.back(), 0.75);
}

TEST(SegmentMetrics, PerfectPrediction) {
  LabelMask gt(16, 16);
  paint(gt, 4, 4, 5, 5, kOod);
  RasterF32 score(16, 16, 0.0f);
  paint(score, 4, 4, 5, 5, 1.0f);
  const SegmentSummary s = segment_metrics(score, gt);
  EXPECT_EQ(s.mean_siou, 100.0);
  EXPECT_EQ(s.mean_ppv, 100.0);
  EXPECT_EQ(s.mean_f1, 100.0);
  EXPECT_FALSE(s.no_predicted_segments);
}

TEST(SegmentMetrics, EmptyPrediction) {
  LabelMask gt(16, 16);
  paint(gt, 2, 2, 3, 3, kOod);
  const SegmentSummary s = segment_metrics(RasterF32(16, 16, 0.1f), gt);
  EXPECT_EQ(s.mean_siou, 0.0);
  EXPECT_EQ(s.mean_f1, 0.0);
  EXPECT_EQ(s.mean_ppv, 0.0);
  EXPECT_EQ(s.predicted_segments, 0u);
  EXPECT_TRUE(s.no_predicted_segments);
}

TEST(SegmentMetrics, NoGroundTruthSegments) {
  try {
    segment_metrics(RasterF32(4, 4, 0.9f), LabelMask(4, 4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoGtSegments);
  }
}

TEST(SegmentMetrics, OffsetPredictionOverTwoObjects) {
  LabelMask gt(16, 16);
  paint(gt, 1, 1, 4, 4, kOod);
  paint(gt, 9, 8, 5, 5, kOod);
  RasterF32 score(16, 16, 0.0f);
  paint(score, 2, 2, 4, 4, 0.8f);   // shifted by one pixel
  paint(score, 6, 6, 5, 4, 0.7f);   // touches the first prediction and the second object
  paint(score, 14, 0, 2, 2, 0.9f);  // pure false positive
  expect_matches_oracle(score, gt, 0.5, Connectivity::Eight);
  expect_matches_oracle(score, gt, 0.5, Connectivity::Four);

  // The isolated false positive starts on row 0, so it is segment 1.
  const SegmentStats stats = segment_stats(score, gt, 0.5);
  EXPECT_EQ(stats.ppv.front(), 0.0);
}

TEST(SegmentMetrics, PredictionSpanningTwoObjectsIsNotPenalizedTwice) {
  // One prediction covers both GT objects and the gap between them. For each
  // object, pixels of the other object are excluded from the union.
  LabelMask gt(4, 8);
  paint(gt, 0, 0, 3, 4, kOod);
  paint(gt, 5, 0, 3, 4, kOod);
  const RasterF32 score(4, 8, 1.0f);
  const SegmentStats stats = segment_stats(score, gt, 0.5);
  ASSERT_EQ(stats.siou.size(), 2u);
  // |k| = 12, |K| = 32, adjustment = 12 -> 12 / (32 - 12) = 0.6.
  EXPECT_DOUBLE_EQ(stats.siou[0], 0.6);
  EXPECT_DOUBLE_EQ(stats.siou[1], 0.6);
  ASSERT_EQ(stats.ppv.size(), 1u);
  EXPECT_DOUBLE_EQ(stats.ppv[0], 24.0 / 32.0);
}

TEST(SegmentMetrics, IgnorePixelsAreNeverPredicted) {
  LabelMask gt(4, 4);
  paint(gt, 0, 0, 2, 2, kOod);
  paint(gt, 2, 0, 2, 4, kIgnore);
  const SegmentStats stats = segment_stats(RasterF32(4, 4, 1.0f), gt, 0.5);
  ASSERT_EQ(stats.ppv.size(), 1u);
  EXPECT_DOUBLE_EQ(stats.ppv[0], 4.0 / 8.0);
}

TEST(SegmentMetrics, BinarizationIsInclusive) {
  LabelMask gt(2, 2);
  gt[0] = kOod;
  RasterF32 score(2, 2, 0.0f);
  score[0] = 0.5f;
  EXPECT_EQ(segment_metrics(score, gt, 0.5).mean_siou, 100.0);
  EXPECT_EQ(segment_metrics(score, gt, 0.51).mean_siou, 0.0);
}

TEST(SegmentMetrics, MatchesSetArithmeticOnRandomScenes) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<std::size_t> pos(0, 13);
    std::uniform_int_distribution<std::size_t> ext(1, 5);
    std::uniform_real_distribution<float> u(0.0f, 1.0f);
    LabelMask gt(16, 16);
    RasterF32 score(16, 16, 0.0f);
    for (int k = 0; k < 3; ++k) {
      const std::size_t x = pos(gen), y = pos(gen);
      paint(gt, x, y, std::min<std::size_t>(ext(gen), 16 - x), std::min<std::size_t>(ext(gen), 16 - y), kOod);
    }
    for (int k = 0; k < 4; ++k) {
      const std::size_t x = pos(gen), y = pos(gen);
      paint(score, x, y, std::min<std::size_t>(ext(gen), 16 - x), std::min<std::size_t>(ext(gen), 16 - y), u(gen));
    }
    if (seed % 3 == 0) paint(gt, 0, 15, 16, 1, kIgnore);
    expect_matches_oracle(score, gt, 0.5, seed % 2 ? Connectivity::Four : Connectivity::Eight);
  }
}

TEST(Summary, F1Formula) {
  SegmentStats stats;
  stats.siou = {0.9, 0.4, 0.1};
  stats.ppv = {0.2, 0.8};
  const std::vector<double> taus = {0.3, 0.5};
  const SegmentSummary s = summarize_segments(stats, taus);
  // tau 0.3: TP 2, FN 1, FP 1 -> 4/6. tau 0.5: TP 1, FN 2, FP 1 -> 2/5.
  EXPECT_DOUBLE_EQ(s.per_threshold[0].f1, 4.0 / 6.0);
  EXPECT_DOUBLE_EQ(s.per_threshold[1].f1, 2.0 / 5.0);
  EXPECT_DOUBLE_EQ(s.mean_f1, 100.0 * (4.0 / 6.0 + 2.0 / 5.0) / 2.0);
  EXPECT_DOUBLE_EQ(s.mean_siou, 100.0 * 1.4 / 3.0);
  EXPECT_DOUBLE_EQ(s.mean_ppv, 50.0);
}

}  // namespace
}  // namespace oodseg
