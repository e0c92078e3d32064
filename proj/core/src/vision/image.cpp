// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include "mirror/vision/image.hpp"

#include <cctype>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "../common/binary_io.hpp"
#include "mirror/error.hpp"

namespace mirror::vision {
namespace {

class PnmCursor {
 public:
  explicit PnmCursor(std::span<const std::byte> bytes) : bytes_(bytes) {}

  char peek() const { return pos_ < bytes_.size() ? static_cast<char>(bytes_[pos_]) : '\0'; }
  bool done() const { return pos_ >= bytes_.size(); }

  void skip_space_and_comments() {
    while (!done()) {
      const char c = peek();
      if (c == '#') {
        while (!done() && peek() != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  int number() {
    skip_space_and_comments();
    if (done() || !std::isdigit(static_cast<unsigned char>(peek()))) {
      throw LoadError("pnm: expected a number in the header");
    }
    long value = 0;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + (peek() - '0');
      if (value > 1'000'000) throw LoadError("pnm: header value too large");
      ++pos_;
    }
    return static_cast<int>(value);
  }

  // Exactly one whitespace byte separates the header from binary data.
  void single_space() {
    if (done() || !std::isspace(static_cast<unsigned char>(peek()))) {
      throw LoadError("pnm: malformed header");
    }
    ++pos_;
  }

  std::span<const std::byte> take(std::size_t n) {
    if (bytes_.size() - pos_ < n) throw LoadError("pnm: unexpected end of stream");
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

 private:
  std::span<const std::byte> bytes_;
  std::size_t pos_ = 0;
};

std::uint8_t rescale(int v, int maxval) {
  if (v > maxval) throw LoadError("pnm: sample exceeds maxval");
  if (maxval == 255) return static_cast<std::uint8_t>(v);
  return static_cast<std::uint8_t>((v * 255 + maxval / 2) / maxval);
}

}  // namespace

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width < 1 || height < 1) throw std::invalid_argument("image dimensions must be positive");
  if (pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw std::invalid_argument("image of " + std::to_string(width) + "x" +
                                std::to_string(height) + " needs " +
                                std::to_string(static_cast<std::size_t>(width) * height) +
                                " pixels, got " + std::to_string(pixels_.size()));
  }
}

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : GrayImage(width, height,
                std::vector<std::uint8_t>(width > 0 && height > 0
                                              ? static_cast<std::size_t>(width) * height
                                              : 0,
                                          fill)) {}

GrayImage rgb_to_gray(std::span<const std::uint8_t> rgb, int width, int height) {
  if (width < 1 || height < 1 ||
      rgb.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3) {
    throw std::invalid_argument("rgb buffer does not match dimensions");
  }
  std::vector<std::uint8_t> gray(rgb.size() / 3);
  for (std::size_t i = 0; i < gray.size(); ++i) {
    const unsigned r = rgb[3 * i], g = rgb[3 * i + 1], b = rgb[3 * i + 2];
    gray[i] = static_cast<std::uint8_t>((299 * r + 587 * g + 114 * b + 500) / 1000);
  }
  return {width, height, std::move(gray)};
}

GrayImage decode_pnm(std::span<const std::byte> bytes) {
  PnmCursor in(bytes);
  auto magic = in.take(2);
  if (static_cast<char>(magic[0]) != 'P') throw LoadError("pnm: bad magic");
  const char kind = static_cast<char>(magic[1]);
  if (kind != '2' && kind != '3' && kind != '5' && kind != '6') {
    throw LoadError(std::string("pnm: unsupported type P") + kind);
  }
  const int width = in.number();
  const int height = in.number();
  const int maxval = in.number();
  if (width < 1 || height < 1) throw LoadError("pnm: empty image");
  if (maxval < 1 || maxval > 255) throw LoadError("pnm: only 8-bit samples are supported");

  const bool color = kind == '3' || kind == '6';
  const std::size_t samples =
      static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * (color ? 3 : 1);
  std::vector<std::uint8_t> data(samples);
  if (kind == '5' || kind == '6') {
    in.single_space();
    auto raw = in.take(samples);
    for (std::size_t i = 0; i < samples; ++i) {
      data[i] = rescale(static_cast<int>(raw[i]), maxval);
    }
  } else {
    for (auto& v : data) v = rescale(in.number(), maxval);
  }
  if (color) return rgb_to_gray(data, width, height);
  return {width, height, std::move(data)};
}

GrayImage read_pnm(const std::filesystem::path& path) {
  return decode_pnm(detail::read_file_bytes(path, "image"));
}

std::vector<std::byte> encode_pgm(const GrayImage& image) {
  const std::string header = "P5\n" + std::to_string(image.width()) + " " +
                             std::to_string(image.height()) + "\n255\n";
  std::vector<std::byte> out(header.size() + image.pixels().size());
  std::memcpy(out.data(), header.data(), header.size());
  std::memcpy(out.data() + header.size(), image.pixels().data(), image.pixels().size());
  return out;
}

void write_pgm(const std::filesystem::path& path, const GrayImage& image) {
  const auto bytes = encode_pgm(image);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LoadError("image: cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace mirror::vision
