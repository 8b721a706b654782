/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "oodseg/metrics.hpp"

namespace oodseg {

// JSON report layout (keys in this order):
//   format ("oodseg-eval-report"), version (1), label, images, binarize_at,
//   connectivity, auprc, fpr95 (fractions), mean_siou, mean_ppv, mean_f1
//   (percent), pixels {ood, in_dist, ignore},
//   segments {gt, predicted, no_predicted_segments},
//   per_threshold [{tau, tp, fn, fp, f1}] (11 rows).
// The output contains no timestamps, so identical inputs give identical bytes.
std::string report_to_json(const EvalReport& report);
EvalReport report_from_json(std::string_view text);

void write_report(const EvalReport& report, const std::filesystem::path& path);
EvalReport read_report(const std::filesystem::path& path);

// tau,tp,fn,fp,f1 rows.
std::string per_threshold_csv(const EvalReport& report);

struct ComparisonTable {
  std::string text;
  std::string csv;
};

// Rows are reports (labelled by EvalReport::label), columns AuPRC, FPR95,
// sIoU, PPV, F1 in percent. The best value of each column (highest, lowest
// for FPR95) is marked with '*'; ties are all marked.
ComparisonTable compare_reports(std::span<const EvalReport> reports);

}  // namespace oodseg
