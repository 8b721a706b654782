/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "oodseg/components.hpp"

#include <algorithm>

#include "oodseg/error.hpp"

namespace oodseg {

namespace {

class DisjointSets {
 public:
  std::uint32_t make() {
    parent_.push_back(static_cast<std::uint32_t>(parent_.size()));
    return parent_.back();
  }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // The smaller root wins, so a set's root is its earliest provisional label.
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) {
      parent_[b] = a;
    } else {
      parent_[a] = b;
    }
  }

 private:
  std::vector<std::uint32_t> parent_;
};

}  // namespace

std::size_t BinaryMask::count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(bits.begin(), bits.end(), [](std::uint8_t b) { return b != 0; }));
}

Components connected_components(const BinaryMask& mask, Connectivity connectivity) {
  if (mask.bits.size() != mask.height * mask.width) {
    fail(ErrorCode::DimensionMismatch, "binary mask storage does not match its dimensions");
  }
  const std::size_t H = mask.height;
  const std::size_t W = mask.width;
  const bool eight = connectivity == Connectivity::Eight;

  Components out;
  out.height = H;
  out.width = W;
  out.labels.assign(H * W, 0);

  // Provisional labels are 1-based; index 0 of the sets is unused.
  DisjointSets sets;
  sets.make();
  for (std::size_t r = 0; r < H; ++r) {
    for (std::size_t c = 0; c < W; ++c) {
      const std::size_t p = r * W + c;
      if (mask.bits[p] == 0) continue;
      std::uint32_t label = 0;
      const auto join = [&](std::size_t q) {
        const std::uint32_t other = out.labels[q];
        if (other == 0) return;
        if (label == 0) {
          label = other;
        } else {
          sets.unite(label, other);
        }
      };
      if (c > 0) join(p - 1);
      if (r > 0) {
        join(p - W);
        if (eight && c > 0) join(p - W - 1);
        if (eight && c + 1 < W) join(p - W + 1);
      }
      out.labels[p] = label != 0 ? label : sets.make();
    }
  }

  // Provisional labels are created in row-major order and each root is the
  // smallest label of its set, so numbering roots by first appearance gives
  // the first-pixel ordering.
  std::vector<std::uint32_t> final_id;
  for (std::size_t p = 0; p < H * W; ++p) {
    const std::uint32_t provisional = out.labels[p];
    if (provisional == 0) continue;
    const std::uint32_t root = sets.find(provisional);
    if (final_id.size() <= root) final_id.resize(root + 1, 0);
    if (final_id[root] == 0) {
      out.segments.emplace_back();
      Segment& seg = out.segments.back();
      seg.id = static_cast<std::uint32_t>(out.segments.size());
      const std::size_t r = p / W;
      const std::size_t c = p % W;
      seg.bbox = {c, r, c, r};
      final_id[root] = seg.id;
    }
    const std::uint32_t id = final_id[root];
    out.labels[p] = id;
    Segment& seg = out.segments[id - 1];
    seg.pixels.push_back(static_cast<std::uint32_t>(p));
    const std::size_t r = p / W;
    const std::size_t c = p % W;
    seg.bbox.x0 = std::min(seg.bbox.x0, c);
    seg.bbox.x1 = std::max(seg.bbox.x1, c);
    seg.bbox.y1 = std::max(seg.bbox.y1, r);
  }
  return out;
}

}  // namespace oodseg
