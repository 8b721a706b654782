/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Set OODSEG_REPRO_DIR to a directory with a
// pipeline.cfg to run the optional full-scale reproduction check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>
#include <random>
#include <string>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "oodseg/aggregate.hpp"
#include "oodseg/error.hpp"
#include "oodseg/fs.hpp"
#include "oodseg/fusion.hpp"
#include "oodseg/metrics.hpp"
#include "oodseg/png_io.hpp"
#include "oodseg/report.hpp"
#include "oodseg/rng.hpp"
#include "oodseg/synth.hpp"
#include "oodseg/tiling.hpp"
#include "oodseg_cli/dataset.hpp"

namespace oodseg {
namespace {

namespace fs = std::filesystem;

// Tolerances and limits.
constexpr double kMetricTolerance = 1e-9;
constexpr double kMetricSeconds = 10.0;
constexpr double kSegmentRatioTolerance = 1e-12;
constexpr double kSegmentSeconds = 5.0;
constexpr double kEntropyTolerance = 1e-9;
constexpr double kEndToEndSeconds = 30.0;
constexpr double kNoisyAuprcFloor = 0.99;
// Pooled AuPRC of the 10-scene seed-7 benchmark at noise_sigma 0.05, frozen
// from the first run of this binary; reruns must reproduce it. The class gap
// (>= 0.5 vs 0.1) is about 11 standard deviations of the combined noise, so
// the ranking stays perfect.
constexpr double kNoisyAuprcPinned = 1.0;
constexpr double kPinnedTolerance = 1e-12;
constexpr double kPerformanceSeconds = 120.0;
constexpr std::size_t kPerformancePixels = 100'000'000;
constexpr double kReproAuprc = 77.6;
constexpr double kReproFpr = 4.2;
constexpr double kReproTolerance = 1.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

Outcome metric_oracle() {
  const auto start = Clock::now();
  double worst_ap = 0.0;
  double worst_fpr = 0.0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::mt19937_64 gen(seed);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 2000)(gen);
    const int levels = seed % 3 == 0 ? 10 : (seed % 3 == 1 ? 1000 : 1 << 24);
    std::uniform_int_distribution<int> lvl(0, levels);
    std::bernoulli_distribution ood(std::uniform_real_distribution<double>(0.01, 0.6)(gen));
    ScoredPixels px;
    for (std::size_t i = 0; i < n; ++i) {
      const bool pos = i == 0 || (i != 1 && ood(gen));
      int v = lvl(gen);
      if (pos) v = std::max(v, lvl(gen));
      px.scores.push_back(static_cast<float>(static_cast<double>(v) / levels));
      px.labels.push_back(pos ? kOod : kInDist);
    }
    worst_ap = std::max(worst_ap, std::abs(auprc(px) - testing::oracle_auprc(px.scores, px.labels)));
    worst_fpr = std::max(worst_fpr, std::abs(fpr_at_tpr(px) -
                                             testing::oracle_fpr_at_tpr(px.scores, px.labels)));
  }
  const double t = seconds_since(start);
  return {worst_ap <= kMetricTolerance && worst_fpr <= kMetricTolerance && t < kMetricSeconds,
          fmt("200 instances, max |dAuPRC| %.3g, max |dFPR95| %.3g (tol %.0e), %.2f s (limit %.0f s)",
              worst_ap, worst_fpr, kMetricTolerance, t, kMetricSeconds)};
}

void paint(std::vector<std::uint8_t>& m, std::size_t x, std::size_t y, std::size_t w, std::size_t h,
           std::uint8_t v) {
  for (std::size_t r = y; r < std::min<std::size_t>(16, y + h); ++r) {
    for (std::size_t c = x; c < std::min<std::size_t>(16, x + w); ++c) m[r * 16 + c] = v;
  }
}

Outcome segment_oracle() {
  const auto start = Clock::now();
  std::size_t count_mismatches = 0;
  double worst = 0.0;
  std::size_t scenes_with_gt = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 gen(1000 + seed);
    std::uniform_int_distribution<std::size_t> pos(0, 15);
    std::uniform_int_distribution<std::size_t> ext(1, 6);
    std::uniform_real_distribution<float> u(0.0f, 1.0f);
    std::vector<std::uint8_t> labels(256, kInDist);
    std::vector<float> scores(256);
    for (auto& s : scores) s = 0.4f * u(gen);
    const std::size_t objects = 1 + seed % 4;
    for (std::size_t k = 0; k < objects; ++k) paint(labels, pos(gen), pos(gen), ext(gen), ext(gen), kOod);
    if (seed % 5 == 0) paint(labels, pos(gen), pos(gen), ext(gen), 2, kIgnore);
    for (std::size_t k = 0; k < 2 + seed % 4; ++k) {
      const std::size_t x = pos(gen), y = pos(gen), w = ext(gen), h = ext(gen);
      const float v = u(gen);
      for (std::size_t r = y; r < std::min<std::size_t>(16, y + h); ++r) {
        for (std::size_t c = x; c < std::min<std::size_t>(16, x + w); ++c) scores[r * 16 + c] = v;
      }
    }
    const Connectivity conn = seed % 2 ? Connectivity::Four : Connectivity::Eight;
    const auto oracle = testing::oracle_segments(16, 16, scores, labels, 0.5, static_cast<int>(conn));
    const SegmentStats stats = segment_stats(RasterF32(16, 16, scores), LabelMask(16, 16, labels), 0.5, conn);
    if (stats.siou.size() != oracle.siou.size() || stats.ppv.size() != oracle.ppv.size()) {
      ++count_mismatches;
      continue;
    }
    for (std::size_t i = 0; i < stats.siou.size(); ++i) worst = std::max(worst, std::abs(stats.siou[i] - oracle.siou[i]));
    for (std::size_t i = 0; i < stats.ppv.size(); ++i) worst = std::max(worst, std::abs(stats.ppv[i] - oracle.ppv[i]));
    if (oracle.siou.empty()) continue;
    ++scenes_with_gt;
    const SegmentSummary s = summarize_segments(stats, default_taus());
    for (std::size_t t = 0; t < 11; ++t) {
      const auto& row = s.per_threshold[t];
      count_mismatches += row.tp != oracle.tp[t] || row.fn != oracle.fn[t] || row.fp != oracle.fp[t];
    }
    worst = std::max({worst, std::abs(s.mean_siou - oracle.mean_siou),
                      std::abs(s.mean_ppv - oracle.mean_ppv), std::abs(s.mean_f1 - oracle.mean_f1)});
  }
  const double t = seconds_since(start);
  return {count_mismatches == 0 && worst <= kSegmentRatioTolerance && t < kSegmentSeconds &&
              scenes_with_gt == 100,
          fmt("100 scenes, %zu count mismatches, max ratio error %.3g (tol %.0e), %.2f s (limit %.0f s)",
              count_mismatches, worst, kSegmentRatioTolerance, t, kSegmentSeconds)};
}

Outcome tiling_roundtrip() {
  std::size_t checked = 0;
  std::size_t failed = 0;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const RasterF32 r = testing::random_raster(512, 1024, 77 + seed);
    std::vector<PatchScheme> layouts;
    for (const std::size_t n : {1u, 4u, 16u, 64u, 256u, 1024u}) {
      layouts.push_back(to_scheme(make_uniform_grid(512, 1024, n).grid));
    }
    for (const auto k : {SchemeKind::A, SchemeKind::B, SchemeKind::C}) layouts.push_back(make_scheme(k, 512, 1024));
    for (const auto& s : layouts) {
      ++checked;
      failed += !reassemble(slice(r, s), make_manifest(s, "img", ".png")).bit_equal(r);
    }
  }
  return {failed == 0, fmt("grids 1..1024 and schemes A/B/C on 512x1024, %zu of %zu roundtrips bitwise identical",
                           checked - failed, checked)};
}

Outcome weighted_combination() {
  std::vector<RasterF32> maps;
  for (std::uint64_t i = 0; i < 5; ++i) maps.push_back(testing::random_raster(32, 32, 500 + i));
  bool ok = true;
  std::string why;
  const auto check = [&](bool cond, const char* what) {
    if (!cond && ok) why = what;
    ok = ok && cond;
  };

  const std::vector<std::vector<double>> rows = {{0, .25, .35, .2, .2}, {0, .3, .4, .2, .1},
                                                 {.2, .25, .4, .1, .05}, {.05, .1, .4, .25, .2},
                                                 {0, .4, .4, .2, 0}};
  for (const auto& w : rows) {
    bool valid = true;
    try {
      validate_weights(w);
    } catch (const Error&) {
      valid = false;
    }
    check(valid, "weight row rejected");
    const RasterF32 out = combine_scales(maps, w);
    for (std::size_t p = 0; p < out.pixel_count(); ++p) {
      double dot = 0.0;
      float lo = 1.0f;
      float hi = 0.0f;
      for (std::size_t i = 0; i < 5; ++i) {
        if (w[i] != 0.0) dot += w[i] * static_cast<double>(maps[i][p]);
        lo = std::min(lo, maps[i][p]);
        hi = std::max(hi, maps[i][p]);
      }
      check(out[p] == static_cast<float>(dot), "dot product mismatch");
      check(out[p] >= lo && out[p] <= hi, "convexity bound violated");
    }
    // Zero-weight maps contribute nothing: drop them and compare bitwise.
    std::vector<RasterF32> kept;
    std::vector<double> kept_w;
    for (std::size_t i = 0; i < 5; ++i) {
      if (w[i] != 0.0) {
        kept.push_back(maps[i]);
        kept_w.push_back(w[i]);
      }
    }
    if (kept.size() < 5) check(combine_scales(kept, kept_w).bit_equal(out), "zero-weight elision");
  }
  check(combine_scales(std::span(maps).first(1), std::vector<double>{1.0}).bit_equal(maps[0]), "d=1 identity");
  return {ok, ok ? "convexity, d=1 identity, zero-weight elision, 5 weight rows valid and equal to per-pixel dot products"
                 : why};
}

Outcome entropy_values() {
  double worst = 0.0;
  for (const std::size_t c : {2u, 19u}) {
    ProbabilityVolume uniform(4, 4, c);
    ProbabilityVolume onehot(4, 4, c);
    for (std::size_t p = 0; p < 16; ++p) {
      for (std::size_t k = 0; k < c; ++k) {
        uniform.at(p, k) = 1.0f / static_cast<float>(c);
        onehot.at(p, k) = k == p % c ? 1.0f : 0.0f;
      }
    }
    const RasterF32 high = entropy_map(uniform);
    const RasterF32 low = entropy_map(onehot);
    for (const float v : high.values()) worst = std::max(worst, std::abs(v - 1.0));
    for (const float v : low.values()) worst = std::max(worst, std::abs(static_cast<double>(v)));
  }
  const RasterF32 x = testing::random_raster(64, 64, 9);
  const bool identity = fuse(x, RasterF32(64, 64, 1.0f)).bit_equal(x);
  return {worst <= kEntropyTolerance && identity,
          fmt("uniform/one-hot entropy for |C| in {2,19}: max error %.3g (tol %.0e); fuse(x, 1) %s",
              worst, kEntropyTolerance, identity ? "bitwise identical" : "DIFFERS")};
}

EvalReport synth_report(const SceneConfig& cfg, std::size_t scenes, const fs::path& dir) {
  cli::write_synthetic_dataset(cfg, scenes, dir, 1);
  return cli::evaluate_directories(dir / "scores", dir / "gt", EvalConfig{}, "synth");
}

Outcome end_to_end(const fs::path& tmp) {
  const auto start = Clock::now();
  SceneConfig cfg = default_scene_config();
  const EvalReport clean = synth_report(cfg, 10, tmp / "clean");
  cfg.noise_sigma = 0.05;
  const EvalReport noisy = synth_report(cfg, 10, tmp / "noisy");
  const double t = seconds_since(start);
  const bool pinned = std::abs(noisy.auprc - kNoisyAuprcPinned) <= kPinnedTolerance;
  return {clean.auprc == 1.0 && clean.fpr95 == 0.0 && noisy.auprc >= kNoisyAuprcFloor && pinned &&
              t < kEndToEndSeconds,
          fmt("noise-free AuPRC %.17g FPR95 %.17g; sigma 0.05 AuPRC %.17g (floor %.2f, pinned %.17g); %.2f s (limit %.0f s)",
              clean.auprc, clean.fpr95, noisy.auprc, kNoisyAuprcFloor, kNoisyAuprcPinned, t, kEndToEndSeconds)};
}

Outcome multi_scale(const fs::path& tmp) {
  const SceneConfig cfg = mixed_size_scene_config();
  const fs::path dir = tmp / "mixed";
  cli::write_synthetic_dataset(cfg, 10, dir, 1);
  std::vector<std::string> ids;
  for (const auto& f : list_files(dir / "gt", ".png")) ids.push_back(f.stem().string());
  const auto auprc_of = [&](const ScaleSchedule& s) {
    return evaluate_dataset(
               ids.size(),
               [&](std::size_t i) {
                 return EvalPair{aggregate_directory(dir / "maps" / ids[i], s),
                                 read_label_mask(dir / "gt" / (ids[i] + ".png"))};
               },
               EvalConfig{})
        .auprc;
  };
  const double a16 = auprc_of(ScaleSchedule({{ScaleSource::grid(16), 1.0}}));
  const double a64 = auprc_of(ScaleSchedule({{ScaleSource::grid(64), 1.0}}));
  const double both = auprc_of(ScaleSchedule({{ScaleSource::grid(16), 0.5}, {ScaleSource::grid(64), 0.5}}));
  return {both > a16 && both > a64,
          fmt("mixed-size config, 10 scenes: AuPRC grid16 %.4f, grid64 %.4f, uniform 16+64 %.4f", a16, a64, both)};
}

Outcome determinism(const fs::path& tmp) {
  SceneConfig cfg = default_scene_config();
  cfg.noise_sigma = 0.1;
  cfg.ignore_border = 4;
  std::string reference;
  std::string detail;
  bool ok = true;
  for (const std::size_t threads : {1u, 4u, 16u}) {
    const fs::path dir = tmp / ("det_" + std::to_string(threads));
    cli::write_synthetic_dataset(cfg, 6, dir / "data", threads);
    cli::PipelineConfig p;
    p.gt = dir / "data" / "gt";
    p.maps = dir / "data" / "maps";
    p.probs = dir / "data" / "probs";
    p.schedule = dir / "data" / "schedule.txt";
    p.out_dir = dir / "out";
    p.fusion = UncertaintyKind::Entropy;
    p.threads = threads;
    cli::run_pipeline(p);
    const std::string report = read_file_text(p.out_dir / "report.json");
    if (reference.empty()) {
      reference = report;
    } else {
      ok = ok && report == reference;
      for (const auto& e : fs::directory_iterator(tmp / "det_1" / "out" / "fused")) {
        ok = ok && read_file_bytes(e.path()) == read_file_bytes(p.out_dir / "fused" / e.path().filename());
      }
    }
  }
  return {ok, ok ? "synth + pipeline reports and fused maps bitwise identical for threads 1, 4, 16"
                 : "outputs differ across thread counts"};
}

Outcome performance() {
  const std::size_t images = 100;
  const std::size_t side = 1000;
  const std::size_t threads = default_thread_count();
  const auto start = Clock::now();
  const PixelMetrics m = evaluate_pixels(
      images,
      [&](std::size_t i) {
        const std::uint64_t key = CounterRng::derive(2024, i);
        RasterF32 score(side, side);
        LabelMask gt(side, side);
        for (std::size_t p = 0; p < side * side; ++p) {
          const std::uint64_t bits = CounterRng::at(key, p);
          const bool ood = (bits & 0xFF) < 13;  // about 5 %
          // 24-bit score, shifted up for OOD pixels.
          const float s = static_cast<float>(bits >> 40) * 0x1.0p-24f;
          score[p] = ood ? 0.5f + 0.5f * s : 0.7f * s;
          gt[p] = ood ? kOod : kInDist;
        }
        return EvalPair{std::move(score), std::move(gt)};
      },
      threads);
  const double t = seconds_since(start);
  const std::size_t pixels = m.positives + m.negatives;
  return {pixels == kPerformancePixels && t < kPerformanceSeconds,
          fmt("%zu pixels pooled on %zu thread(s) in %.2f s (limit %.0f s), AuPRC %.4f", pixels, threads, t,
              kPerformanceSeconds, m.auprc)};
}

std::optional<Outcome> reproduction() {
  const char* dir = std::getenv("OODSEG_REPRO_DIR");
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  const fs::path cfg_path = fs::path(dir) / "pipeline.cfg";
  const auto cfg = cli::parse_pipeline_config(read_file_text(cfg_path), cfg_path.parent_path());
  const EvalReport r = cli::run_pipeline(cfg);
  const double ap = 100.0 * r.auprc;
  const double fpr = 100.0 * r.fpr95;
  return Outcome{std::abs(ap - kReproAuprc) <= kReproTolerance && std::abs(fpr - kReproFpr) <= kReproTolerance,
                 fmt("AuPRC %.2f (target %.1f), FPR95 %.2f (target %.1f), tolerance +/-%.1f", ap, kReproAuprc,
                     fpr, kReproFpr, kReproTolerance)};
}

}  // namespace
}  // namespace oodseg

int main() {
  using namespace oodseg;
  testing::TempDir tmp;
  int failures = 0;
  const auto run = [&](const char* name, const std::function<Outcome()>& fn) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("[%s] %-22s %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  };

  run("metric-oracle", metric_oracle);
  run("segment-oracle", segment_oracle);
  run("tiling-roundtrip", tiling_roundtrip);
  run("weighted-combination", weighted_combination);
  run("entropy-fusion", entropy_values);
  run("end-to-end-synthetic", [&] { return end_to_end(tmp.path()); });
  run("multi-scale", [&] { return multi_scale(tmp.path()); });
  run("determinism", [&] { return determinism(tmp.path()); });
  run("performance", performance);

  try {
    if (const auto o = reproduction()) {
      failures += !o->pass;
      std::printf("[%s] %-22s %s\n", o->pass ? "PASS" : "FAIL", "reproduction", o->detail.c_str());
    } else {
      std::printf("[SKIP] %-22s needs precomputed model outputs; set OODSEG_REPRO_DIR\n", "reproduction");
    }
  } catch (const std::exception& e) {
    ++failures;
    std::printf("[FAIL] %-22s threw: %s\n", "reproduction", e.what());
  }
  return failures == 0 ? 0 : 1;
}
