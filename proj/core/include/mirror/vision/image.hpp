// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace mirror::vision {

/// Row-major 8-bit grayscale frame. Width and height are at least 1.
class GrayImage {
 public:
  /// Throws std::invalid_argument when pixels.size() != width * height.
  GrayImage(int width, int height, std::vector<std::uint8_t> pixels);
  /// Constant-valued image.
  GrayImage(int width, int height, std::uint8_t fill = 0);

  int width() const { return width_; }
  int height() const { return height_; }
  std::uint8_t at(int x, int y) const { return pixels_[static_cast<std::size_t>(y) * width_ + x]; }
  std::uint8_t& at(int x, int y) { return pixels_[static_cast<std::size_t>(y) * width_ + x]; }
  std::span<const std::uint8_t> pixels() const { return pixels_; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> pixels_;
};

/// Interleaved RGB to gray with luma weights 0.299/0.587/0.114, rounded.
GrayImage rgb_to_gray(std::span<const std::uint8_t> rgb, int width, int height);

/// Netpbm decoding: P2/P5 grayscale, P3/P6 color (converted with rgb_to_gray).
/// Throws LoadError on malformed input.
GrayImage decode_pnm(std::span<const std::byte> bytes);
GrayImage read_pnm(const std::filesystem::path& path);
/// Binary P5 encoding.
std::vector<std::byte> encode_pgm(const GrayImage& image);
void write_pgm(const std::filesystem::path& path, const GrayImage& image);

}  // namespace mirror::vision
