// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mirror/affect/emotion.hpp"
#include "mirror/ritual/engine.hpp"
#include "mirror/vision/image.hpp"

namespace mirror::service {

/// Bumped on incompatible message changes; announced in both hellos.
inline constexpr int kWireVersion = 1;
/// Frames larger than this on either side are refused.
inline constexpr int kMaxFrameSide = 1920;

class WireError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Client -> server. Text messages are JSON objects with "type" and an
// optional "seq"; frames may also arrive as binary messages.

struct ClientHello {
  std::string client;
  int version = kWireVersion;
};
struct ClientFrame {
  vision::GrayImage image;
};

using ClientMessage = std::variant<ClientHello, ClientFrame>;

/// Throws WireError for malformed JSON, unknown types or bad frame data.
ClientMessage parse_client_text(std::string_view text);

/// Binary frame: u32 width, u32 height (little-endian), then width*height
/// grayscale bytes, row-major.
ClientFrame parse_binary_frame(std::span<const std::byte> bytes);
std::vector<std::byte> encode_binary_frame(const vision::GrayImage& image);
/// {"type":"frame","seq":..,"width":..,"height":..,"data":"<base64>"}
std::string encode_frame_text(const vision::GrayImage& image, std::uint64_t seq);

// Server -> client. Every message carries "type" and a strictly increasing "seq".

struct ServerHello {
  std::string server;
  int version = kWireVersion;
  std::vector<std::string> assets;
};
struct StateMessage {
  ritual::Phase phase;
};
struct EmotionMessage {
  affect::EmotionProbabilities probabilities;
  std::string word;
};
struct PoemMessage {
  std::string body;
  int fade_in_ms;
  int fade_out_ms;
  bool fallback = false;
};
struct ErrorMessage {
  std::string stage;
  std::string message;
};

using ServerMessage =
    std::variant<ServerHello, StateMessage, EmotionMessage, PoemMessage, ErrorMessage>;

std::string encode_server_message(const ServerMessage& message, std::uint64_t seq);

struct SequencedMessage {
  std::uint64_t seq;
  ServerMessage message;
};
/// Inverse of encode_server_message. Throws WireError.
SequencedMessage parse_server_message(std::string_view text);

std::string_view message_type(const ServerMessage& message);

}  // namespace mirror::service
