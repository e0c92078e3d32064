// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>

namespace mirror::service {

/// The `mirror` command line:
///   run, process, train-ngram, score, bench, history, convert-cascade.
/// Returns 0 on success, 1 when a command fails (the message names the
/// stage or asset) and 2 for usage errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mirror::service
