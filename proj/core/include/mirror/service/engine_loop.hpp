// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <memory>

#include "mirror/ritual/engine.hpp"
#include "mirror/service/assets.hpp"
#include "mirror/service/config.hpp"
#include "mirror/service/wire.hpp"
#include "mirror/vision/image.hpp"

namespace mirror::service {

/// Owns the ritual state. A single loop thread applies events in arrival
/// order and turns actions into outgoing messages; one analysis worker
/// handles frames (latest wins) and one generation worker writes poems.
class EngineLoop {
 public:
  /// Called on the loop thread only, in the order messages are produced.
  using Sink = std::function<void(const ServerMessage&)>;

  struct Stats {
    std::uint64_t frames_submitted = 0;
    /// Replaced in the slot before the analysis worker picked them up.
    std::uint64_t frames_dropped = 0;
    std::uint64_t frames_analyzed = 0;
    std::uint64_t generations = 0;
    std::uint64_t sessions_logged = 0;
  };

  /// Opens the session store when configured (throws on failure).
  EngineLoop(std::shared_ptr<const Assets> assets, ServiceConfig config, Sink sink);
  ~EngineLoop();

  EngineLoop(const EngineLoop&) = delete;
  EngineLoop& operator=(const EngineLoop&) = delete;

  void start();
  /// Joins all threads. Idempotent.
  void stop();

  /// Hands a frame to the analysis worker, replacing any frame still waiting.
  void submit_frame(vision::GrayImage frame);
  /// Injects an event directly, bypassing analysis.
  void post(ritual::Event event);

  ritual::Phase phase() const;
  Stats stats() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace mirror::service
