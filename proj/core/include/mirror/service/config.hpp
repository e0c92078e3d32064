// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "mirror/poet/params.hpp"
#include "mirror/poet/poem.hpp"
#include "mirror/ritual/engine.hpp"
#include "mirror/vision/detect.hpp"

namespace mirror::service {

enum class BackendKind { ngram, remote };

struct BackendConfig {
  BackendKind kind = BackendKind::ngram;
  /// ngram: exactly one of a trained model file or a corpus to train at startup.
  std::optional<std::filesystem::path> ngram_model;
  std::optional<std::filesystem::path> corpus;
  int order = 3;
  double alpha = 0.01;
  /// remote
  std::string remote_url;
  std::chrono::milliseconds remote_timeout{5000};
};

struct ServiceConfig {
  std::string listen_address = "127.0.0.1";
  std::uint16_t port = 8080;

  std::filesystem::path cascade;
  std::filesystem::path weights;
  /// Built-in word table when unset.
  std::optional<std::filesystem::path> lexicon;

  BackendConfig backend;
  poet::GenerationParams generation;
  std::string fallback_line{poet::kDefaultFallbackLine};
  /// Upper bound on one make_poem call in the service.
  std::chrono::milliseconds generation_timeout{15000};

  vision::DetectionParams detection;
  ritual::EngineConfig engine;

  /// Logging disabled when unset.
  std::optional<std::filesystem::path> session_store;
  /// Static files served next to the websocket endpoint.
  std::optional<std::filesystem::path> ui_root;
};

/// Relative paths are resolved against `base_dir`. Unknown keys and out of
/// range values throw ConfigError.
ServiceConfig parse_service_config(std::string_view json_text,
                                   const std::filesystem::path& base_dir = {});
ServiceConfig load_service_config(const std::filesystem::path& path);

}  // namespace mirror::service
