// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include "mirror/service/wire.hpp"

#include <array>
#include <cstring>

#include <boost/beast/core/detail/base64.hpp>
#include <nlohmann/json.hpp>

namespace mirror::service {
namespace {

using json = nlohmann::json;
namespace b64 = boost::beast::detail::base64;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_dims(std::int64_t width, std::int64_t height) {
  if (width < 1 || height < 1 || width > kMaxFrameSide || height > kMaxFrameSide) {
    throw WireError("frame: dimensions " + std::to_string(width) + "x" + std::to_string(height) +
                    " outside 1.." + std::to_string(kMaxFrameSide));
  }
}

std::string base64_encode(std::span<const std::uint8_t> bytes) {
  std::string out(b64::encoded_size(bytes.size()), '\0');
  out.resize(b64::encode(out.data(), bytes.data(), bytes.size()));
  return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text) {
  if (text.size() % 4 != 0) throw WireError("frame: base64 length is not a multiple of 4");
  std::size_t padding = 0;
  while (padding < 2 && padding < text.size() && text[text.size() - 1 - padding] == '=') ++padding;
  std::vector<std::uint8_t> out(b64::decoded_size(text.size()));
  const auto [written, read] = b64::decode(out.data(), text.data(), text.size());
  if (read + padding != text.size() && read != text.size()) {
    throw WireError("frame: invalid base64 data");
  }
  out.resize(written);
  return out;
}

ritual::Phase parse_phase(const std::string& name) {
  for (auto p : {ritual::Phase::idle, ritual::Phase::sensing, ritual::Phase::generating,
                 ritual::Phase::presenting, ritual::Phase::fading_out}) {
    if (ritual::to_string(p) == name) return p;
  }
  throw WireError("unknown phase '" + name + "'");
}

}  // namespace

ClientMessage parse_client_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception&) {
    throw WireError("message is not valid JSON");
  }
  if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string()) {
    throw WireError("message needs a string \"type\"");
  }
  const auto type = doc["type"].get<std::string>();
  try {
    if (type == "hello") {
      return ClientHello{doc.value("client", std::string("unknown")),
                         doc.value("version", kWireVersion)};
    }
    if (type == "frame") {
      const auto width = doc.at("width").get<std::int64_t>();
      const auto height = doc.at("height").get<std::int64_t>();
      check_dims(width, height);
      auto pixels = base64_decode(doc.at("data").get<std::string>());
      if (pixels.size() != static_cast<std::size_t>(width * height)) {
        throw WireError("frame: " + std::to_string(pixels.size()) + " bytes for " +
                        std::to_string(width) + "x" + std::to_string(height));
      }
      return ClientFrame{vision::GrayImage(static_cast<int>(width), static_cast<int>(height),
                                           std::move(pixels))};
    }
  } catch (const json::exception& e) {
    throw WireError(type + ": " + e.what());
  }
  throw WireError("unknown message type '" + type + "'");
}

ClientFrame parse_binary_frame(std::span<const std::byte> bytes) {
  if (bytes.size() < 8) throw WireError("frame: binary header needs 8 bytes");
  auto u32 = [&](std::size_t at) {
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | std::to_integer<std::uint32_t>(bytes[at + i]);
    return v;
  };
  const std::int64_t width = u32(0), height = u32(4);
  check_dims(width, height);
  if (bytes.size() - 8 != static_cast<std::size_t>(width * height)) {
    throw WireError("frame: " + std::to_string(bytes.size() - 8) + " bytes for " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
  std::vector<std::uint8_t> pixels(bytes.size() - 8);
  std::memcpy(pixels.data(), bytes.data() + 8, pixels.size());
  return ClientFrame{
      vision::GrayImage(static_cast<int>(width), static_cast<int>(height), std::move(pixels))};
}

std::vector<std::byte> encode_binary_frame(const vision::GrayImage& image) {
  std::vector<std::byte> out(8 + image.pixels().size());
  auto put = [&](std::size_t at, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out[at + i] = static_cast<std::byte>((v >> (8 * i)) & 0xFF);
  };
  put(0, static_cast<std::uint32_t>(image.width()));
  put(4, static_cast<std::uint32_t>(image.height()));
  std::memcpy(out.data() + 8, image.pixels().data(), image.pixels().size());
  return out;
}

std::string encode_frame_text(const vision::GrayImage& image, std::uint64_t seq) {
  return json{{"type", "frame"},
              {"seq", seq},
              {"width", image.width()},
              {"height", image.height()},
              {"data", base64_encode(image.pixels())}}
      .dump();
}

std::string_view message_type(const ServerMessage& message) {
  static constexpr std::array<std::string_view, std::variant_size_v<ServerMessage>> names{
      "hello", "state", "emotion", "poem", "error"};
  return names[message.index()];
}

std::string encode_server_message(const ServerMessage& message, std::uint64_t seq) {
  json j{{"type", message_type(message)}, {"seq", seq}};
  std::visit(Overloaded{
                 [&](const ServerHello& m) {
                   j["server"] = m.server;
                   j["version"] = m.version;
                   j["assets"] = m.assets;
                 },
                 [&](const StateMessage& m) { j["phase"] = ritual::to_string(m.phase); },
                 [&](const EmotionMessage& m) {
                   json p = json::object();
                   for (auto c : affect::kAllCategories) {
                     p[std::string(affect::to_string(c))] = m.probabilities[c];
                   }
                   j["probabilities"] = std::move(p);
                   j["word"] = m.word;
                 },
                 [&](const PoemMessage& m) {
                   j["body"] = m.body;
                   j["fade_in_ms"] = m.fade_in_ms;
                   j["fade_out_ms"] = m.fade_out_ms;
                   j["fallback"] = m.fallback;
                 },
                 [&](const ErrorMessage& m) {
                   j["stage"] = m.stage;
                   j["message"] = m.message;
                 },
             },
             message);
  return j.dump();
}

SequencedMessage parse_server_message(std::string_view text) {
  try {
    const auto j = json::parse(text);
    const auto type = j.at("type").get<std::string>();
    const auto seq = j.at("seq").get<std::uint64_t>();
    if (type == "hello") {
      return {seq, ServerHello{j.at("server").get<std::string>(), j.at("version").get<int>(),
                               j.at("assets").get<std::vector<std::string>>()}};
    }
    if (type == "state") return {seq, StateMessage{parse_phase(j.at("phase").get<std::string>())}};
    if (type == "emotion") {
      std::array<double, affect::kCategoryCount> v{};
      for (auto c : affect::kAllCategories) {
        v[affect::index_of(c)] = j.at("probabilities").at(std::string(affect::to_string(c))).get<double>();
      }
      return {seq, EmotionMessage{affect::EmotionProbabilities::from_values(v),
                                  j.at("word").get<std::string>()}};
    }
    if (type == "poem") {
      return {seq, PoemMessage{j.at("body").get<std::string>(), j.at("fade_in_ms").get<int>(),
                               j.at("fade_out_ms").get<int>(), j.value("fallback", false)}};
    }
    if (type == "error") {
      return {seq, ErrorMessage{j.at("stage").get<std::string>(), j.at("message").get<std::string>()}};
    }
    throw WireError("unknown message type '" + type + "'");
  } catch (const json::exception& e) {
    throw WireError(std::string("server message: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw WireError(std::string("server message: ") + e.what());
  }
}

}  // namespace mirror::service
