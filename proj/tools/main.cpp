// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "mirror/service/cli.hpp"

int main(int argc, char** argv) {
  return mirror::service::run_cli(argc, argv, std::cout, std::cerr);
}
