/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <iosfwd>

namespace oodseg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Entry point of the `oodseg` tool: tile, aggregate, fuse, eval, synth,
// pipeline, report.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace oodseg::cli
