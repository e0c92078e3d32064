// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include "mirror/ritual/engine.hpp"

#include <array>
#include <stdexcept>

#include "mirror/error.hpp"
#include "mirror/random.hpp"

namespace mirror::ritual {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void reset_to_idle(RitualState& s) {
  s.phase = Phase::idle;
  s.presence_counter = 0;
  s.absence_counter = 0;
  s.current_poem.reset();
  s.emotion_window.clear();
  s.pending = SessionEntry{};
  s.shown_at_ms = 0;
  s.fade_in_done = false;
}

}  // namespace

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::idle: return "idle";
    case Phase::sensing: return "sensing";
    case Phase::generating: return "generating";
    case Phase::presenting: return "presenting";
    case Phase::fading_out: return "fading_out";
  }
  return "unknown";
}

void EngineConfig::validate() const {
  if (activate_frames < 1) throw ConfigError("engine: activate_frames must be at least 1");
  if (absence_frames < 1) throw ConfigError("engine: absence_frames must be at least 1");
  if (window_size < 1) throw ConfigError("engine: window_size must be at least 1");
  if (fade_in_ms < 0 || fade_out_ms < 0) throw ConfigError("engine: fade durations must be >= 0");
}

std::string_view event_name(const Event& event) {
  static constexpr std::array<std::string_view, std::variant_size_v<Event>> names{
      "face_seen", "no_face", "poem_ready", "poem_failed", "fade_in_done", "fade_out_done", "tick"};
  return names[event.index()];
}

affect::EmotionProbabilities aggregate_emotion(
    std::span<const affect::EmotionProbabilities> window) {
  if (window.empty()) throw std::invalid_argument("aggregate_emotion: empty window");
  std::array<double, affect::kCategoryCount> sum{};
  for (const auto& p : window) {
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += p.at(i);
  }
  for (auto& v : sum) v /= static_cast<double>(window.size());
  return affect::EmotionProbabilities::normalized(sum);
}

affect::EmotionProbabilities aggregate_emotion(
    const std::deque<affect::EmotionProbabilities>& window) {
  const std::vector<affect::EmotionProbabilities> copy(window.begin(), window.end());
  return aggregate_emotion(std::span<const affect::EmotionProbabilities>(copy));
}

Transition transition(const RitualState& state, const Event& event, const EngineConfig& config,
                      const affect::EmotionLexicon& lexicon) {
  Transition out{state, {}, true};
  RitualState& s = out.state;

  std::visit(
      Overloaded{
          [&](const Tick& e) { s.now_ms = std::max(s.now_ms, e.now_ms); },

          [&](const FaceSeen& e) {
            s.absence_counter = 0;
            switch (s.phase) {
              case Phase::idle:
                if (++s.presence_counter >= config.activate_frames) {
                  s.phase = Phase::sensing;
                  s.emotion_window.clear();
                }
                break;
              case Phase::sensing: {
                s.emotion_window.push_back(e.probabilities);
                while (s.emotion_window.size() > static_cast<std::size_t>(config.window_size)) {
                  s.emotion_window.pop_front();
                }
                s.pending.timings.detect_ms = e.detect_ms;
                s.pending.timings.classify_ms = e.classify_ms;
                if (s.emotion_window.size() < static_cast<std::size_t>(config.window_size)) break;

                const auto reading = aggregate_emotion(s.emotion_window);
                const auto word = affect::map_emotion(reading, lexicon);
                ++s.generation;
                Rng rng(mix_seed(config.seed, s.generation));
                auto seed = affect::compose_seed(word, lexicon, rng);

                s.pending.timestamp_ms = s.now_ms;
                s.pending.probabilities = reading;
                s.pending.emotion_word = word;
                s.pending.seed_text = seed.text;
                s.phase = Phase::generating;
                out.actions.emplace_back(StartGeneration{s.generation, std::move(seed), reading});
                break;
              }
              case Phase::generating:
              case Phase::presenting:
              case Phase::fading_out:
                break;
            }
          },

          [&](const NoFace&) {
            s.presence_counter = 0;
            ++s.absence_counter;
            if (s.absence_counter < config.absence_frames) return;
            if (s.phase == Phase::sensing) {
              reset_to_idle(s);
            } else if (s.phase == Phase::presenting) {
              s.phase = Phase::fading_out;
              out.actions.emplace_back(FadeOut{config.fade_out_ms});
            }
          },

          [&](const PoemReady& e) {
            if (s.phase != Phase::generating || e.generation != s.generation) {
              out.handled = false;
              return;
            }
            s.phase = Phase::presenting;
            s.current_poem = e.poem;
            s.shown_at_ms = s.now_ms;
            s.fade_in_done = false;
            s.pending.poem_body = e.poem.body;
            s.pending.fallback = e.poem.fallback;
            s.pending.timings.generate_ms = e.generate_ms;
            out.actions.emplace_back(ShowPoem{e.poem, config.fade_in_ms});
          },

          [&](const PoemFailed& e) {
            if (s.phase != Phase::generating || e.generation != s.generation) {
              out.handled = false;
              return;
            }
            auto entry = s.pending;
            entry.outcome = Outcome::failed;
            entry.failure_reason = e.reason;
            reset_to_idle(s);
            out.actions.emplace_back(LogSession{std::move(entry)});
          },

          [&](const FadeInDone&) {
            if (s.phase != Phase::presenting) {
              out.handled = false;
              return;
            }
            s.fade_in_done = true;
          },

          [&](const FadeOutDone&) {
            if (s.phase != Phase::fading_out) {
              out.handled = false;
              return;
            }
            auto entry = s.pending;
            entry.outcome = Outcome::displayed;
            entry.display_duration_ms = s.now_ms - s.shown_at_ms;
            reset_to_idle(s);
            out.actions.emplace_back(LogSession{std::move(entry)});
          },
      },
      event);
  return out;
}

}  // namespace mirror::ritual
