// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mirror/affect/emotion.hpp"

namespace mirror::ritual {

/// Wall-clock milliseconds since the Unix epoch.
using TimestampMs = std::int64_t;

TimestampMs now_ms();

struct PipelineTimings {
  double detect_ms = 0.0;
  double classify_ms = 0.0;
  double generate_ms = 0.0;

  double total_ms() const { return detect_ms + classify_ms + generate_ms; }
  friend bool operator==(const PipelineTimings&, const PipelineTimings&) = default;
};

enum class Outcome { displayed, failed };

std::string_view to_string(Outcome outcome);

/// One interaction, from the emotion reading to the end of the display.
struct SessionEntry {
  TimestampMs timestamp_ms = 0;
  affect::EmotionProbabilities probabilities = affect::EmotionProbabilities::uniform();
  std::string emotion_word;
  std::string seed_text;
  std::string poem_body;
  /// Only set for poems that were shown and faded out.
  std::optional<std::int64_t> display_duration_ms;
  PipelineTimings timings;
  Outcome outcome = Outcome::displayed;
  std::string failure_reason;
  bool fallback = false;

  friend bool operator==(const SessionEntry&, const SessionEntry&) = default;
};

/// One JSON object, no trailing newline.
std::string serialize_entry(const SessionEntry& entry);
/// Throws std::invalid_argument on malformed records.
SessionEntry parse_entry(std::string_view line);

struct MoodPoint {
  TimestampMs timestamp_ms;
  affect::EmotionCategory category;
  double confidence;

  friend bool operator==(const MoodPoint&, const MoodPoint&) = default;
};

/// Append-only newline-delimited JSON log of session entries.
class SessionStore {
 public:
  using Warning = std::function<void(const std::string&)>;

  /// Creates the file (and parent directories) if missing. A trailing
  /// partial record left by a crash is kept on disk but never parsed.
  explicit SessionStore(std::filesystem::path path, Warning warn = {});

  const std::filesystem::path& path() const { return path_; }

  /// Flushes before returning. Throws std::runtime_error on I/O failure.
  void append(const SessionEntry& entry);

  /// All readable records in file order; unreadable lines are skipped with
  /// a warning.
  std::vector<SessionEntry> read_all() const;

  /// Dominant emotion of every entry at or after `since`, oldest first.
  std::vector<MoodPoint> mood_history(TimestampMs since) const;

 private:
  std::filesystem::path path_;
  Warning warn_;
};

}  // namespace mirror::ritual
