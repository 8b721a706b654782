/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "oodseg/error.hpp"
#include "oodseg/fusion.hpp"

namespace oodseg {
namespace {

ProbabilityVolume filled(std::size_t classes, const std::vector<float>& dist, std::size_t pixels = 4) {
  ProbabilityVolume v(1, pixels, classes);
  for (std::size_t p = 0; p < pixels; ++p) {
    for (std::size_t c = 0; c < classes; ++c) v.at(p, c) = dist[c];
  }
  return v;
}

TEST(Entropy, UniformIsOne) {
  for (const std::size_t c : {2u, 3u, 19u}) {
    const auto e = entropy_map(filled(c, std::vector<float>(c, 1.0f / static_cast<float>(c))));
    for (const float v : e.values()) EXPECT_NEAR(v, 1.0, 1e-9) << c;
  }
}

TEST(Entropy, OneHotIsZero) {
  for (const std::size_t c : {2u, 19u}) {
    std::vector<float> d(c, 0.0f);
    d[c - 1] = 1.0f;
    const auto e = entropy_map(filled(c, d));
    for (const float v : e.values()) EXPECT_NEAR(v, 0.0, 1e-9);
  }
}

TEST(Entropy, HalfHalfOverNineteenClasses) {
  std::vector<float> d(19, 0.0f);
  d[0] = 0.5f;
  d[1] = 0.5f;
  const auto e = entropy_map(filled(19, d));
  // Stored as float, so compare at float resolution.
  for (const float v : e.values()) {
    EXPECT_EQ(v, static_cast<float>(testing::kHalfHalfEntropy19));
  }
}

TEST(Entropy, MatchesDirectFormulaOnRandomVolume) {
  std::mt19937_64 gen(3);
  std::gamma_distribution<double> g(0.5);
  ProbabilityVolume v(8, 8, 5);
  for (std::size_t p = 0; p < v.pixel_count(); ++p) {
    std::vector<double> w(5);
    double s = 0.0;
    for (auto& x : w) s += (x = g(gen) + 1e-6);
    for (std::size_t c = 0; c < 5; ++c) v.at(p, c) = static_cast<float>(w[c] / s);
  }
  const auto e = entropy_map(v);
  for (std::size_t p = 0; p < v.pixel_count(); ++p) {
    double s = 0.0;
    for (std::size_t c = 0; c < 5; ++c) s += v.at(p, c);
    double h = 0.0;
    for (std::size_t c = 0; c < 5; ++c) {
      const double q = v.at(p, c) / s;
      if (q > 0.0) h -= q * std::log(q);
    }
    EXPECT_NEAR(e[p], h / std::log(5.0), 1e-6);
  }
}

TEST(Entropy, InvalidVolumesRejected) {
  EXPECT_THROW(entropy_map(filled(1, {1.0f})), Error);
  EXPECT_THROW(entropy_map(filled(2, {0.9f, 0.9f})), Error);
}

TEST(Road, ComplementOfRoadProbability) {
  const ClassIndex road{0, "road"};
  EXPECT_EQ(road_uncertainty(filled(2, {1.0f, 0.0f}), road)[0], 0.0f);
  EXPECT_EQ(road_uncertainty(filled(2, {0.0f, 1.0f}), road)[0], 1.0f);
  EXPECT_FLOAT_EQ(road_uncertainty(filled(2, {0.3f, 0.7f}), road)[0], 0.7f);
}

TEST(Road, ResolvedByNameThenIndex) {
  const std::vector<std::string> named = {"sky", "road", "car"};
  EXPECT_EQ(resolve_road_class(named, std::nullopt).index, 1u);
  EXPECT_EQ(resolve_road_class(named, 2).index, 1u);
  const std::vector<std::string> unnamed = {"a", "b", "c"};
  EXPECT_EQ(resolve_road_class(unnamed, 2).index, 2u);
  try {
    resolve_road_class(unnamed, std::nullopt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadClassIndex);
  }
  EXPECT_THROW(resolve_road_class(unnamed, 3), Error);
  EXPECT_THROW(resolve_road_class(std::vector<std::string>{"Road"}, std::nullopt), Error);
}

TEST(Fuse, Product) {
  EXPECT_FLOAT_EQ(fuse(RasterF32(1, 1, 0.8f), RasterF32(1, 1, 0.5f))[0], 0.4f);
}

TEST(Fuse, OnesAreIdentity) {
  const RasterF32 conf = testing::random_raster(32, 32, 1);
  EXPECT_TRUE(fuse(conf, RasterF32(32, 32, 1.0f)).bit_equal(conf));
}

TEST(Fuse, MatchesElementwiseProduct) {
  const RasterF32 a = testing::random_raster(64, 64, 2);
  const RasterF32 b = testing::random_raster(64, 64, 3);
  const RasterF32 f = fuse(a, b);
  for (std::size_t p = 0; p < f.pixel_count(); ++p) EXPECT_EQ(f[p], a[p] * b[p]);
}

TEST(Fuse, ShapeMismatch) {
  try {
    fuse(RasterF32(2, 2), RasterF32(2, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(Argmax, OneHotAndTies) {
  std::vector<float> d(6, 0.0f);
  d[3] = 1.0f;
  EXPECT_EQ(argmax_prediction(filled(6, d)).classes[0], 3u);
  std::vector<float> tie(6, 0.0f);
  tie[2] = 0.5f;
  tie[5] = 0.5f;
  EXPECT_EQ(argmax_prediction(filled(6, tie)).classes[0], 2u);
}

TEST(Argmax, MatchesLinearScan) {
  std::mt19937_64 gen(4);
  std::uniform_int_distribution<int> q(0, 4);
  ProbabilityVolume v(16, 16, 4);
  for (std::size_t p = 0; p < v.pixel_count(); ++p) {
    int w[4];
    int s = 0;
    for (auto& x : w) s += (x = q(gen));
    if (s == 0) w[0] = s = 1;
    for (std::size_t c = 0; c < 4; ++c) v.at(p, c) = static_cast<float>(w[c]) / static_cast<float>(s);
  }
  const ClassMap m = argmax_prediction(v);
  for (std::size_t p = 0; p < v.pixel_count(); ++p) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < 4; ++c) {
      if (v.at(p, c) > v.at(p, best)) best = c;
    }
    EXPECT_EQ(m.classes[p], best);
  }
}

}  // namespace
}  // namespace oodseg
