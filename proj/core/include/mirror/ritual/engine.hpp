// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mirror/affect/emotion.hpp"
#include "mirror/affect/lexicon.hpp"
#include "mirror/poet/poem.hpp"
#include "mirror/ritual/session.hpp"

namespace mirror::ritual {

enum class Phase { idle, sensing, generating, presenting, fading_out };

std::string_view to_string(Phase phase);

struct EngineConfig {
  /// Consecutive face frames needed to wake from Idle.
  int activate_frames = 3;
  /// Consecutive empty frames that end Sensing or a display.
  int absence_frames = 15;
  /// Frames averaged into the emotion reading.
  int window_size = 10;
  int fade_in_ms = 1500;
  int fade_out_ms = 1200;
  /// Seeds prefix selection; generation n uses mix_seed(seed, n).
  std::uint64_t seed = 0;

  /// Throws ConfigError.
  void validate() const;
};

// Events.

struct FaceSeen {
  affect::EmotionProbabilities probabilities;
  double detect_ms = 0.0;
  double classify_ms = 0.0;
};
struct NoFace {
  double detect_ms = 0.0;
};
/// `generation` echoes StartGeneration::generation; stale results are ignored.
struct PoemReady {
  std::uint64_t generation;
  poet::Poem poem;
  double generate_ms = 0.0;
};
struct PoemFailed {
  std::uint64_t generation;
  std::string reason;
};
struct FadeInDone {};
struct FadeOutDone {};
struct Tick {
  TimestampMs now_ms;
};

using Event = std::variant<FaceSeen, NoFace, PoemReady, PoemFailed, FadeInDone, FadeOutDone, Tick>;

std::string_view event_name(const Event& event);

// Actions.

struct StartGeneration {
  std::uint64_t generation;
  affect::SeedText seed;
  affect::EmotionProbabilities probabilities;
};
struct ShowPoem {
  poet::Poem poem;
  int fade_in_ms;
};
struct FadeOut {
  int fade_out_ms;
};
struct LogSession {
  SessionEntry entry;
};

using Action = std::variant<StartGeneration, ShowPoem, FadeOut, LogSession>;

struct RitualState {
  Phase phase = Phase::idle;
  int presence_counter = 0;
  int absence_counter = 0;
  /// Present exactly in Presenting and FadingOut.
  std::optional<poet::Poem> current_poem;
  /// Holds at most EngineConfig::window_size readings.
  std::deque<affect::EmotionProbabilities> emotion_window;

  /// Id of the most recent StartGeneration; 0 before the first.
  std::uint64_t generation = 0;
  TimestampMs now_ms = 0;
  /// The interaction being built up for the session log.
  SessionEntry pending;
  TimestampMs shown_at_ms = 0;
  bool fade_in_done = false;
};

struct Transition {
  RitualState state;
  std::vector<Action> actions;
  /// False when the event means nothing in the current phase.
  bool handled = true;
};

/// The ritual state machine. Pure: no I/O, no clocks; time only advances
/// through Tick events.
Transition transition(const RitualState& state, const Event& event, const EngineConfig& config,
                      const affect::EmotionLexicon& lexicon);

/// Component-wise mean, renormalized. Throws std::invalid_argument when empty.
affect::EmotionProbabilities aggregate_emotion(std::span<const affect::EmotionProbabilities> window);
affect::EmotionProbabilities aggregate_emotion(
    const std::deque<affect::EmotionProbabilities>& window);

}  // namespace mirror::ritual
