/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include "oodseg/report.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "oodseg/error.hpp"
#include "oodseg/fs.hpp"

namespace oodseg {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kFormat = "oodseg-eval-report";
constexpr int kVersion = 1;

std::string format_double(double v, const char* fmt) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

}  // namespace

std::string report_to_json(const EvalReport& r) {
  Json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["label"] = r.label;
  j["images"] = r.images;
  j["binarize_at"] = r.binarize_at;
  j["connectivity"] = r.connectivity;
  j["auprc"] = r.auprc;
  j["fpr95"] = r.fpr95;
  j["mean_siou"] = r.mean_siou;
  j["mean_ppv"] = r.mean_ppv;
  j["mean_f1"] = r.mean_f1;
  j["pixels"] = {{"ood", r.pixels.ood}, {"in_dist", r.pixels.in_dist}, {"ignore", r.pixels.ignore}};
  j["segments"] = {{"gt", r.gt_segments},
                   {"predicted", r.predicted_segments},
                   {"no_predicted_segments", r.no_predicted_segments}};
  Json rows = Json::array();
  for (const auto& row : r.per_threshold) {
    rows.push_back({{"tau", row.tau}, {"tp", row.tp}, {"fn", row.fn}, {"fp", row.fp},
                    {"f1", row.f1}});
  }
  j["per_threshold"] = rows;
  return j.dump(2) + "\n";
}

EvalReport report_from_json(std::string_view text) {
  try {
    const Json j = Json::parse(text);
    if (j.at("format").get<std::string>() != kFormat || j.at("version").get<int>() != kVersion) {
      fail(ErrorCode::MalformedReport, "not an oodseg evaluation report");
    }
    EvalReport r;
    r.label = j.value("label", std::string{});
    r.images = j.at("images").get<std::size_t>();
    r.binarize_at = j.at("binarize_at").get<double>();
    r.connectivity = j.at("connectivity").get<int>();
    r.auprc = j.at("auprc").get<double>();
    r.fpr95 = j.at("fpr95").get<double>();
    r.mean_siou = j.at("mean_siou").get<double>();
    r.mean_ppv = j.at("mean_ppv").get<double>();
    r.mean_f1 = j.at("mean_f1").get<double>();
    const auto& px = j.at("pixels");
    r.pixels = {px.at("ood").get<std::size_t>(), px.at("in_dist").get<std::size_t>(),
                px.at("ignore").get<std::size_t>()};
    const auto& seg = j.at("segments");
    r.gt_segments = seg.at("gt").get<std::size_t>();
    r.predicted_segments = seg.at("predicted").get<std::size_t>();
    r.no_predicted_segments = seg.at("no_predicted_segments").get<bool>();
    for (const auto& row : j.at("per_threshold")) {
      r.per_threshold.push_back({row.at("tau").get<double>(), row.at("tp").get<std::size_t>(),
                                 row.at("fn").get<std::size_t>(), row.at("fp").get<std::size_t>(),
                                 row.at("f1").get<double>()});
    }
    const auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    const auto in_pct = [](double v) { return v >= 0.0 && v <= 100.0; };
    if (!in_unit(r.auprc) || !in_unit(r.fpr95) || !in_pct(r.mean_siou) || !in_pct(r.mean_ppv) ||
        !in_pct(r.mean_f1)) {
      fail(ErrorCode::MalformedReport, "metric outside its valid range");
    }
    return r;
  } catch (const Json::exception& e) {
    fail(ErrorCode::MalformedReport, e.what());
  }
}

void write_report(const EvalReport& report, const std::filesystem::path& path) {
  write_file_atomic(path, report_to_json(report));
}

EvalReport read_report(const std::filesystem::path& path) {
  try {
    return report_from_json(read_file_text(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::IoFailure) throw;
    throw Error(e.code(), path.string() + ": " + e.message());
  }
}

std::string per_threshold_csv(const EvalReport& report) {
  std::string out = "tau,tp,fn,fp,f1\n";
  for (const auto& row : report.per_threshold) {
    out += format_double(row.tau, "%.2f") + "," + std::to_string(row.tp) + "," +
           std::to_string(row.fn) + "," + std::to_string(row.fp) + "," +
           format_double(row.f1, "%.17g") + "\n";
  }
  return out;
}

ComparisonTable compare_reports(std::span<const EvalReport> reports) {
  if (reports.empty()) fail(ErrorCode::MalformedReport, "no reports to compare");
  constexpr std::size_t kCols = 5;
  const std::array<const char*, kCols> headers = {"AuPRC ↑", "FPR95 ↓", "sIoU ↑", "PPV ↑",
                                                  "F1 ↑"};
  const std::array<bool, kCols> higher_better = {true, false, true, true, true};
  const auto values = [](const EvalReport& r) {
    return std::array<double, kCols>{100.0 * r.auprc, 100.0 * r.fpr95, r.mean_siou, r.mean_ppv,
                                     r.mean_f1};
  };

  std::array<double, kCols> best{};
  for (std::size_t c = 0; c < kCols; ++c) {
    best[c] = values(reports.front())[c];
    for (const auto& r : reports) {
      const double v = values(r)[c];
      best[c] = higher_better[c] ? std::max(best[c], v) : std::min(best[c], v);
    }
  }

  std::vector<std::string> labels;
  std::size_t label_width = std::string_view("configuration").size();
  for (std::size_t i = 0; i < reports.size(); ++i) {
    labels.push_back(reports[i].label.empty() ? "report " + std::to_string(i + 1)
                                              : reports[i].label);
    label_width = std::max(label_width, labels.back().size());
  }

  std::ostringstream text;
  std::ostringstream csv;
  const int lw = static_cast<int>(label_width);
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%-*s", lw, "configuration");
  text << buf;
  csv << "configuration";
  for (std::size_t c = 0; c < kCols; ++c) {
    // Arrow glyphs are 3 bytes but one column wide, so pad to 9 bytes for a
    // 7-column header aligned with "%7.1f".
    std::snprintf(buf, sizeof(buf), "  %9s  ", headers[c]);
    text << buf;
    csv << "," << std::string(headers[c], std::string_view(headers[c]).find(' '));
  }
  csv << ",best\n";
  text << "\n" << std::string(label_width + kCols * 11, '-') << "\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto v = values(reports[i]);
    std::snprintf(buf, sizeof(buf), "%-*s", lw, labels[i].c_str());
    text << buf;
    std::string csv_label = labels[i];
    std::replace(csv_label.begin(), csv_label.end(), ',', ';');
    csv << csv_label;
    std::string best_cols;
    for (std::size_t c = 0; c < kCols; ++c) {
      const bool is_best = v[c] == best[c];
      std::snprintf(buf, sizeof(buf), "  %7.1f%s", v[c], is_best ? " *" : "  ");
      text << buf;
      csv << "," << format_double(v[c], "%.6f");
      if (is_best) {
        if (!best_cols.empty()) best_cols += ";";
        best_cols += std::string(headers[c], std::string_view(headers[c]).find(' '));
      }
    }
    text << "\n";
    csv << "," << best_cols << "\n";
  }
  return {text.str(), csv.str()};
}

}  // namespace oodseg
