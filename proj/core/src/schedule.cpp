/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "oodseg/aggregate.hpp"
#include "oodseg/fs.hpp"

namespace oodseg {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  return s;
}

double weight_sum(std::span<const double> weights) {
  double sum = 0.0;
  for (const double w : weights) sum += w;
  return sum;
}

}  // namespace

std::string ScaleSource::tag() const {
  if (kind == Kind::Grid) return "grid_" + std::to_string(n_patches);
  return "scheme_" + std::string(to_string(scheme));
}

std::vector<double> uniform_weights(std::size_t d) {
  if (d == 0) fail(ErrorCode::ZeroScales, "a schedule needs at least one scale");
  return std::vector<double>(d, 1.0 / static_cast<double>(d));
}

void validate_weights(std::span<const double> weights) {
  if (weights.empty()) fail(ErrorCode::ZeroScales, "a schedule needs at least one scale");
  for (const double w : weights) {
    if (!std::isfinite(w) || w < 0.0 || w > 1.0) {
      fail(ErrorCode::BadWeights, "weight " + std::to_string(w) + " is outside [0,1]");
    }
  }
  const double sum = weight_sum(weights);
  if (std::abs(sum - 1.0) > kWeightSumTolerance) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", sum);
    fail(ErrorCode::BadWeights, std::string("weights sum to ") + buf + ", expected 1");
  }
}

ScaleSchedule::ScaleSchedule(std::vector<ScaleEntry> entries) : entries_(std::move(entries)) {
  std::vector<double> w;
  w.reserve(entries_.size());
  for (const auto& e : entries_) {
    if (e.source.kind == ScaleSource::Kind::Grid) grid_side(e.source.n_patches);
    w.push_back(e.weight);
  }
  validate_weights(w);
  std::stable_sort(entries_.begin(), entries_.end(),
                   [](const ScaleEntry& a, const ScaleEntry& b) { return a.source < b.source; });
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i - 1].source == entries_[i].source) {
      fail(ErrorCode::BadConfig, "scale " + entries_[i].source.tag() + " listed twice");
    }
  }
  const double sum = weight_sum(weights());
  if (sum != 1.0) {
    for (auto& e : entries_) e.weight /= sum;
  }
}

ScaleSchedule ScaleSchedule::uniform(std::span<const ScaleSource> sources) {
  const auto w = uniform_weights(sources.size());
  std::vector<ScaleEntry> entries;
  for (std::size_t i = 0; i < sources.size(); ++i) entries.push_back({sources[i], w[i]});
  return ScaleSchedule(std::move(entries));
}

std::vector<double> ScaleSchedule::weights() const {
  std::vector<double> w;
  w.reserve(entries_.size());
  for (const auto& e : entries_) w.push_back(e.weight);
  return w;
}

std::vector<ScaleSource> ScaleSchedule::sources() const {
  std::vector<ScaleSource> s;
  s.reserve(entries_.size());
  for (const auto& e : entries_) s.push_back(e.source);
  return s;
}

ScaleSchedule parse_schedule(std::string_view text) {
  std::vector<ScaleEntry> entries;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = trim(line.substr(0, hash));
    }
    if (line.empty()) continue;

    const auto bad = [&](const std::string& why) {
      fail(ErrorCode::BadConfig, "schedule line " + std::to_string(line_no) + ": " + why);
    };
    const auto c1 = line.find(':');
    const auto c2 = c1 == std::string_view::npos ? c1 : line.find(':', c1 + 1);
    if (c2 == std::string_view::npos || line.find(':', c2 + 1) != std::string_view::npos) {
      bad("expected grid:<N>:<alpha> or scheme:<A|B|C>:<alpha>");
    }
    const std::string_view kind = line.substr(0, c1);
    const std::string_view what = line.substr(c1 + 1, c2 - c1 - 1);
    const std::string_view alpha = line.substr(c2 + 1);

    ScaleEntry entry;
    if (kind == "grid") {
      std::size_t n = 0;
      auto [p, ec] = std::from_chars(what.data(), what.data() + what.size(), n);
      if (ec != std::errc() || p != what.data() + what.size()) bad("bad patch count");
      entry.source = ScaleSource::grid(n);
    } else if (kind == "scheme") {
      if (what != "A" && what != "B" && what != "C") bad("scheme must be A, B or C");
      entry.source = ScaleSource::of_scheme(parse_scheme_kind(what));
    } else {
      bad("unknown source kind '" + std::string(kind) + "'");
    }
    auto [p, ec] = std::from_chars(alpha.data(), alpha.data() + alpha.size(), entry.weight);
    if (ec != std::errc() || p != alpha.data() + alpha.size()) bad("bad weight");
    entries.push_back(entry);
  }
  return ScaleSchedule(std::move(entries));
}

std::string format_schedule(const ScaleSchedule& schedule) {
  std::string out;
  for (const auto& e : schedule.entries()) {
    char weight[40];
    std::snprintf(weight, sizeof(weight), "%.17g", e.weight);
    if (e.source.kind == ScaleSource::Kind::Grid) {
      out += "grid:" + std::to_string(e.source.n_patches);
    } else {
      out += "scheme:" + std::string(to_string(e.source.scheme));
    }
    out += ":";
    out += weight;
    out += "\n";
  }
  return out;
}

ScaleSchedule read_schedule(const std::filesystem::path& path) {
  try {
    return parse_schedule(read_file_text(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::IoFailure) throw;
    throw Error(e.code(), path.string() + ": " + e.message());
  }
}

void write_schedule(const ScaleSchedule& schedule, const std::filesystem::path& path) {
  write_file_atomic(path, format_schedule(schedule));
}

}  // namespace oodseg
