// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace mirror {

/// Invalid or inconsistent configuration (lexicon, params, service config).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A binary or text asset (weights, cascade, model, corpus) failed to load.
class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tensor or layer shapes do not chain.
class ShapeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text generation failed (sampling, backend, transport).
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Statistics requested on inputs where they are undefined.
class StatsError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A pipeline stage (detect, classify, generate) failed.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& message)
      : std::runtime_error(stage + ": " + message), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace mirror
