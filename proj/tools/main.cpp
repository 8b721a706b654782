/*
 * Copyright (C) 2026 The oodseg Authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include <iostream>

#include "oodseg_cli/cli.hpp"

int main(int argc, char** argv) { return oodseg::cli::run(argc, argv, std::cout, std::cerr); }
