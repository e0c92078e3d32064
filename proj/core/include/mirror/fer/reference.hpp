// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "mirror/fer/network.hpp"

namespace mirror::fer {

/// The reference architecture with deterministic pseudo-random weights:
///
///   conv 3x3 1->8 pad 1, batch norm, relu, max pool 2
///   depthwise 3x3 pad 1, relu, conv 1x1 8->16, relu, max pool 2
///   global average pool, dense 16->7, softmax
///
/// Useful as a fixture and as a stand-in until trained weights are supplied;
/// its outputs carry no information about the face.
Network make_reference_network(std::uint64_t seed);

}  // namespace mirror::fer
