// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "mirror/service/config.hpp"
#include "mirror/service/engine_loop.hpp"

namespace mirror::service {

/// The running mirror: assets, engine loop and an HTTP server that serves
/// the UI's static files and upgrades /ws to the message channel.
///
///   GET /ws       websocket, see wire.hpp
///   GET /health   {"status":"ready","assets":[...]}
///   GET /<file>   static file from ui_root ("/" serves index.html)
class Service {
 public:
  /// Loads every asset and binds the listening socket. Throws LoadError
  /// naming the asset or std::runtime_error when the address is unusable;
  /// nothing is left running on failure.
  explicit Service(ServiceConfig config);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// The bound port (useful with port 0).
  std::uint16_t port() const;
  const std::vector<std::string>& asset_identities() const;

  /// Starts the engine and the network thread.
  void start();
  /// Closes every connection and joins all threads. Idempotent.
  void stop();
  /// start(), then blocks until SIGINT/SIGTERM, then stop().
  void run_until_signal();

  std::size_t client_count() const;
  EngineLoop& engine();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace mirror::service
