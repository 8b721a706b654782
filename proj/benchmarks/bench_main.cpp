/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include <benchmark/benchmark.h>

#include <vector>

#include "oodseg/aggregate.hpp"
#include "oodseg/components.hpp"
#include "oodseg/fusion.hpp"
#include "oodseg/metrics.hpp"
#include "oodseg/rng.hpp"
#include "oodseg/tiling.hpp"

namespace {

using namespace oodseg;

RasterF32 noise_raster(std::size_t h, std::size_t w, std::uint64_t seed) {
  RasterF32 r(h, w);
  for (std::size_t p = 0; p < r.pixel_count(); ++p) {
    r[p] = static_cast<float>(CounterRng::at(seed, p) >> 40) * 0x1.0p-24f;
  }
  return r;
}

void BM_PixelMetrics(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  ClassScores base;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t bits = CounterRng::at(1, i);
    const float s = static_cast<float>(bits >> 40) * 0x1.0p-24f;
    ((bits & 0xFF) < 13 ? base.positives : base.negatives).push_back(s);
  }
  for (auto _ : state) {
    ClassScores cs = base;
    cs.sort();
    benchmark::DoNotOptimize(pixel_metrics(cs));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_PixelMetrics)->Arg(1 << 16)->Arg(1 << 20)->Arg(1 << 23)->Unit(benchmark::kMillisecond);

void BM_SliceReassemble(benchmark::State& state) {
  const RasterF32 r = noise_raster(512, 1024, 2);
  const PatchScheme s = to_scheme(make_uniform_grid(512, 1024, static_cast<std::size_t>(state.range(0))).grid);
  const PatchManifest m = make_manifest(s, "img", ".png");
  for (auto _ : state) {
    benchmark::DoNotOptimize(reassemble(slice(r, s), m));
  }
  state.SetItemsProcessed(state.iterations() * 512 * 1024);
}
BENCHMARK(BM_SliceReassemble)->Arg(16)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_ConnectedComponents(benchmark::State& state) {
  BinaryMask m(512, 1024);
  const auto density = static_cast<std::uint64_t>(state.range(0));
  for (std::size_t p = 0; p < m.bits.size(); ++p) m.bits[p] = CounterRng::at(3, p) % 100 < density;
  for (auto _ : state) {
    benchmark::DoNotOptimize(connected_components(m, Connectivity::Eight));
  }
  state.SetItemsProcessed(state.iterations() * 512 * 1024);
}
BENCHMARK(BM_ConnectedComponents)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_CombineScales(benchmark::State& state) {
  std::vector<RasterF32> maps;
  for (std::uint64_t i = 0; i < 4; ++i) maps.push_back(noise_raster(512, 1024, 10 + i));
  const std::vector<double> w = uniform_weights(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(combine_scales(maps, w));
  }
  state.SetItemsProcessed(state.iterations() * 512 * 1024);
}
BENCHMARK(BM_CombineScales)->Unit(benchmark::kMillisecond);

void BM_EntropyMap(benchmark::State& state) {
  ProbabilityVolume v(256, 512, 19);
  for (std::size_t p = 0; p < v.pixel_count(); ++p) {
    for (std::size_t c = 0; c < 19; ++c) v.at(p, c) = 1.0f / 19.0f;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(entropy_map(v));
  }
  state.SetItemsProcessed(state.iterations() * 256 * 512);
}
BENCHMARK(BM_EntropyMap)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
