// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "mirror/fer/tensor.hpp"
#include "mirror/vision/image.hpp"
#include "mirror/vision/integral.hpp"

namespace mirror::vision {

inline constexpr int kFaceSize = 48;

/// Crops `box`, resizes bilinearly to 48x48 and maps v to (v/255 - 0.5) * 2.
/// Throws std::invalid_argument for an empty box, std::out_of_range when it
/// leaves the image.
fer::Tensor preprocess_face(const GrayImage& image, const FaceBox& box);

}  // namespace mirror::vision
