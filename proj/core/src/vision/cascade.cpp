// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include "mirror/vision/cascade.hpp"

#include <cmath>
#include <cstring>
#include <string>

#include "../common/binary_io.hpp"
#include "mirror/error.hpp"

namespace mirror::vision {
namespace {

constexpr std::string_view kMagic = "HCAS";
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kMaxCount = 1u << 20;

std::string where(std::size_t stage, std::size_t weak) {
  return "cascade: stage " + std::to_string(stage) + " classifier " + std::to_string(weak);
}

std::uint32_t bounded_count(detail::ByteReader& in, const char* what) {
  const auto n = in.u32();
  if (n > kMaxCount || n > in.remaining()) {
    throw LoadError(std::string("cascade: implausible ") + what + " count " + std::to_string(n));
  }
  return n;
}

}  // namespace

Cascade::Cascade(int base_width, int base_height, std::vector<CascadeStage> stages)
    : base_width_(base_width), base_height_(base_height), stages_(std::move(stages)) {
  if (base_width_ < 1 || base_height_ < 1) throw LoadError("cascade: empty base window");
  if (stages_.empty()) throw LoadError("cascade: no stages");
  for (std::size_t s = 0; s < stages_.size(); ++s) {
    const auto& stage = stages_[s];
    if (!std::isfinite(stage.threshold)) {
      throw LoadError("cascade: stage " + std::to_string(s) + " threshold not finite");
    }
    if (stage.weak_classifiers.empty()) {
      throw LoadError("cascade: stage " + std::to_string(s) + " has no classifiers");
    }
    for (std::size_t k = 0; k < stage.weak_classifiers.size(); ++k) {
      const auto& weak = stage.weak_classifiers[k];
      if (weak.feature.size() < 2 || weak.feature.size() > 3) {
        throw LoadError(where(s, k) + ": feature needs 2 or 3 rectangles");
      }
      if (!std::isfinite(weak.node_threshold) || !std::isfinite(weak.left_value) ||
          !std::isfinite(weak.right_value)) {
        throw LoadError(where(s, k) + ": non-finite threshold or leaf value");
      }
      for (const auto& wr : weak.feature) {
        const auto& r = wr.rect;
        if (r.x < 0 || r.y < 0 || r.w <= 0 || r.h <= 0 || r.x + r.w > base_width_ ||
            r.y + r.h > base_height_) {
          throw LoadError(where(s, k) + ": rectangle outside the base window");
        }
        if (!std::isfinite(wr.weight)) throw LoadError(where(s, k) + ": non-finite weight");
      }
    }
  }
}

std::size_t Cascade::weak_count() const {
  std::size_t n = 0;
  for (const auto& stage : stages_) n += stage.weak_classifiers.size();
  return n;
}

Cascade parse_cascade_binary(std::span<const std::byte> bytes) {
  detail::ByteReader in(bytes, "cascade");
  in.expect_magic(kMagic);
  const auto version = in.u32();
  if (version != kVersion) throw LoadError("cascade: unsupported version " + std::to_string(version));
  const auto base_w = in.u32();
  const auto base_h = in.u32();
  if (base_w > 4096 || base_h > 4096) throw LoadError("cascade: base window too large");
  std::vector<CascadeStage> stages(bounded_count(in, "stage"));
  for (auto& stage : stages) {
    stage.threshold = in.f32();
    stage.weak_classifiers.resize(bounded_count(in, "classifier"));
    for (auto& weak : stage.weak_classifiers) {
      weak.feature.resize(bounded_count(in, "rectangle"));
      for (auto& wr : weak.feature) {
        wr.rect.x = static_cast<int>(in.u32());
        wr.rect.y = static_cast<int>(in.u32());
        wr.rect.w = static_cast<int>(in.u32());
        wr.rect.h = static_cast<int>(in.u32());
        wr.weight = in.f32();
      }
      weak.node_threshold = in.f32();
      weak.left_value = in.f32();
      weak.right_value = in.f32();
    }
  }
  if (!in.at_end()) throw LoadError("cascade: trailing bytes after last stage");
  return {static_cast<int>(base_w), static_cast<int>(base_h), std::move(stages)};
}

std::vector<std::byte> serialize_cascade_binary(const Cascade& cascade) {
  detail::ByteWriter out;
  out.magic(kMagic);
  out.u32(kVersion);
  out.u32(static_cast<std::uint32_t>(cascade.base_width()));
  out.u32(static_cast<std::uint32_t>(cascade.base_height()));
  out.u32(static_cast<std::uint32_t>(cascade.stages().size()));
  for (const auto& stage : cascade.stages()) {
    out.f32(stage.threshold);
    out.u32(static_cast<std::uint32_t>(stage.weak_classifiers.size()));
    for (const auto& weak : stage.weak_classifiers) {
      out.u32(static_cast<std::uint32_t>(weak.feature.size()));
      for (const auto& wr : weak.feature) {
        out.u32(static_cast<std::uint32_t>(wr.rect.x));
        out.u32(static_cast<std::uint32_t>(wr.rect.y));
        out.u32(static_cast<std::uint32_t>(wr.rect.w));
        out.u32(static_cast<std::uint32_t>(wr.rect.h));
        out.f32(wr.weight);
      }
      out.f32(weak.node_threshold);
      out.f32(weak.left_value);
      out.f32(weak.right_value);
    }
  }
  return out.take();
}

Cascade load_cascade(const std::filesystem::path& path) {
  const auto bytes = detail::read_file_bytes(path, "cascade");
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), kMagic.data(), 4) == 0) {
    return parse_cascade_binary(bytes);
  }
  const std::string_view text(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  if (text.find('<') != std::string_view::npos) return import_cascade_xml(text);
  throw LoadError("cascade: unrecognized format in " + path.string());
}

Cascade always_pass_cascade(int base_width, int base_height) {
  // Both leaves vote 1 and the stage needs 0, so only the variance gate rejects.
  WeakClassifier weak;
  weak.feature = {{{0, 0, base_width, base_height}, -1.0f},
                  {{0, 0, base_width, base_height}, 1.0f}};
  weak.node_threshold = 0.0f;
  weak.left_value = 1.0f;
  weak.right_value = 1.0f;
  return {base_width, base_height, {CascadeStage{0.0f, {weak}}}};
}

}  // namespace mirror::vision
