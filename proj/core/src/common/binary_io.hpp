// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

// Little-endian readers/writers shared by the FERW and HCAS formats.

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mirror/error.hpp"

namespace mirror::detail {

class ByteReader {
 public:
  ByteReader(std::span<const std::byte> bytes, std::string context)
      : bytes_(bytes), context_(std::move(context)) {}

  void expect_magic(std::string_view magic) {
    auto got = take(magic.size());
    if (std::memcmp(got.data(), magic.data(), magic.size()) != 0) {
      throw LoadError(context_ + ": bad magic, expected \"" + std::string(magic) + "\"");
    }
  }

  std::uint8_t u8() { return static_cast<std::uint8_t>(take(1)[0]); }

  std::uint32_t u32() {
    auto b = take(4);
    return static_cast<std::uint32_t>(b[0]) | static_cast<std::uint32_t>(b[1]) << 8 |
           static_cast<std::uint32_t>(b[2]) << 16 | static_cast<std::uint32_t>(b[3]) << 24;
  }

  float f32() { return std::bit_cast<float>(u32()); }

  bool at_end() const { return pos_ == bytes_.size(); }
  std::size_t remaining() const { return bytes_.size() - pos_; }
  const std::string& context() const { return context_; }

 private:
  std::span<const std::byte> take(std::size_t n) {
    if (bytes_.size() - pos_ < n) throw LoadError(context_ + ": unexpected end of stream");
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  std::span<const std::byte> bytes_;
  std::size_t pos_ = 0;
  std::string context_;
};

class ByteWriter {
 public:
  void magic(std::string_view m) {
    for (char c : m) out_.push_back(static_cast<std::byte>(c));
  }
  void u8(std::uint8_t v) { out_.push_back(static_cast<std::byte>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xFFu));
  }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }

  std::vector<std::byte> take() { return std::move(out_); }

 private:
  std::vector<std::byte> out_;
};

inline std::vector<std::byte> read_file_bytes(const std::filesystem::path& path,
                                              const std::string& context) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(context + ": not found: " + path.string());
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<std::byte> bytes(raw.size());
  std::memcpy(bytes.data(), raw.data(), raw.size());
  return bytes;
}

}  // namespace mirror::detail
