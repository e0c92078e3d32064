// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include <set>

#include <gtest/gtest.h>

#include "mirror/error.hpp"
#include "mirror/ritual/engine.hpp"
#include "properties.hpp"

namespace mirror::ritual {
namespace {

using affect::EmotionCategory;
using affect::EmotionProbabilities;

class EngineTest : public ::testing::Test {
 protected:
  EngineTest() {
    config_.activate_frames = 2;
    config_.absence_frames = 2;
    config_.window_size = 2;
  }

  std::vector<Action> feed(const Event& e) {
    auto t = transition(state_, e, config_, lexicon_);
    state_ = std::move(t.state);
    last_handled_ = t.handled;
    return std::move(t.actions);
  }

  FaceSeen face(EmotionCategory c = EmotionCategory::happy) {
    return {EmotionProbabilities::one_hot(c), 3.0, 4.0};
  }

  poet::Poem poem(const std::string& seed_text) {
    poet::Poem p;
    p.body = seed_text + " and the light is kind.";
    return p;
  }

  // Drives Idle to Generating and returns the StartGeneration action.
  StartGeneration start() {
    feed(face());
    feed(face());
    feed(face());
    const auto actions = feed(face());
    EXPECT_EQ(state_.phase, Phase::generating);
    return std::get<StartGeneration>(actions.at(0));
  }

  EngineConfig config_;
  affect::EmotionLexicon lexicon_ = affect::EmotionLexicon::defaults();
  RitualState state_;
  bool last_handled_ = true;
};

TEST_F(EngineTest, DebouncesPresence) {
  feed(face());
  EXPECT_EQ(state_.phase, Phase::idle);
  feed(NoFace{});
  feed(face());
  EXPECT_EQ(state_.phase, Phase::idle);
  feed(face());
  EXPECT_EQ(state_.phase, Phase::sensing);
  EXPECT_TRUE(state_.emotion_window.empty());
}

TEST_F(EngineTest, FullWindowStartsGeneration) {
  feed(Tick{1000});
  const auto start_action = start();
  EXPECT_EQ(start_action.generation, 1u);
  EXPECT_EQ(start_action.seed.emotion_word, "ecstatic");
  EXPECT_EQ(start_action.probabilities, EmotionProbabilities::one_hot(EmotionCategory::happy));
  EXPECT_EQ(state_.pending.timestamp_ms, 1000);
  EXPECT_EQ(state_.pending.seed_text, start_action.seed.text);
  EXPECT_DOUBLE_EQ(state_.pending.timings.detect_ms, 3.0);
}

TEST_F(EngineTest, SeedDependsOnlyOnConfigSeedAndGeneration) {
  const auto a = start();
  RitualState other;
  state_ = other;
  const auto b = start();
  EXPECT_EQ(a.seed, b.seed);
}

TEST_F(EngineTest, AbsenceDuringSensingReturnsToIdle) {
  feed(face());
  feed(face());
  feed(face());
  feed(NoFace{});
  EXPECT_EQ(state_.phase, Phase::sensing);
  feed(NoFace{});
  EXPECT_EQ(state_.phase, Phase::idle);
  EXPECT_TRUE(state_.emotion_window.empty());
}

TEST_F(EngineTest, FullRitualLogsDisplayedSession) {
  feed(Tick{100});
  const auto s = start();
  feed(Tick{400});
  auto actions = feed(PoemReady{s.generation, poem(s.seed.text), 250.0});
  ASSERT_EQ(actions.size(), 1u);
  EXPECT_EQ(std::get<ShowPoem>(actions[0]).fade_in_ms, config_.fade_in_ms);
  EXPECT_EQ(state_.phase, Phase::presenting);
  feed(FadeInDone{});
  EXPECT_TRUE(state_.fade_in_done);

  // Faces during presenting never trigger a new generation.
  for (int i = 0; i < 20; ++i) EXPECT_TRUE(feed(face()).empty());
  feed(NoFace{});
  actions = feed(NoFace{});
  EXPECT_EQ(std::get<FadeOut>(actions.at(0)).fade_out_ms, config_.fade_out_ms);
  EXPECT_EQ(state_.phase, Phase::fading_out);

  feed(Tick{5400});
  actions = feed(FadeOutDone{});
  const auto& entry = std::get<LogSession>(actions.at(0)).entry;
  EXPECT_EQ(entry.outcome, Outcome::displayed);
  EXPECT_EQ(entry.display_duration_ms, 5000);
  EXPECT_EQ(entry.poem_body, poem(s.seed.text).body);
  EXPECT_DOUBLE_EQ(entry.timings.generate_ms, 250.0);
  EXPECT_EQ(entry.timestamp_ms, 100);
  EXPECT_EQ(state_.phase, Phase::idle);
  EXPECT_FALSE(state_.current_poem);
}

TEST_F(EngineTest, StaleResultsAreIgnored) {
  const auto s = start();
  feed(PoemReady{s.generation + 1, poem("x"), 1.0});
  EXPECT_FALSE(last_handled_);
  EXPECT_EQ(state_.phase, Phase::generating);
  feed(PoemFailed{s.generation - 1, "old"});
  EXPECT_FALSE(last_handled_);
  EXPECT_EQ(state_.phase, Phase::generating);
}

TEST_F(EngineTest, FailureLogsAndReturnsToIdle) {
  const auto s = start();
  const auto actions = feed(PoemFailed{s.generation, "generate: timed out"});
  const auto& entry = std::get<LogSession>(actions.at(0)).entry;
  EXPECT_EQ(entry.outcome, Outcome::failed);
  EXPECT_EQ(entry.failure_reason, "generate: timed out");
  EXPECT_FALSE(entry.display_duration_ms);
  EXPECT_EQ(state_.phase, Phase::idle);
}

TEST_F(EngineTest, UserLeavingDuringGenerationStillShowsPoem) {
  const auto s = start();
  for (int i = 0; i < 5; ++i) feed(NoFace{});
  EXPECT_EQ(state_.phase, Phase::generating);
  feed(PoemReady{s.generation, poem(s.seed.text), 1.0});
  EXPECT_EQ(state_.phase, Phase::presenting);
}

TEST_F(EngineTest, OutOfPhaseTimersAreUnhandled) {
  feed(FadeInDone{});
  EXPECT_FALSE(last_handled_);
  feed(FadeOutDone{});
  EXPECT_FALSE(last_handled_);
}

TEST_F(EngineTest, ClockNeverGoesBackwards) {
  feed(Tick{500});
  feed(Tick{200});
  EXPECT_EQ(state_.now_ms, 500);
}

TEST(Aggregate, MeanOfWindow) {
  std::deque<EmotionProbabilities> window{EmotionProbabilities::one_hot(EmotionCategory::happy),
                                          EmotionProbabilities::one_hot(EmotionCategory::sad)};
  const auto mean = aggregate_emotion(window);
  EXPECT_DOUBLE_EQ(mean[EmotionCategory::happy], 0.5);
  EXPECT_DOUBLE_EQ(mean[EmotionCategory::sad], 0.5);
}

TEST(EngineConfig, Validation) {
  EngineConfig c;
  EXPECT_NO_THROW(c.validate());
  c.window_size = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.fade_in_ms = -1;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(EngineSafety, RandomEventSequences) {
  const auto lexicon = affect::EmotionLexicon::defaults();
  Rng rng(77);
  std::set<Phase> seen;
  for (int seq = 0; seq < 2000; ++seq) {
    std::vector<Phase> visited;
    const auto violation =
        test::check_engine_sequence(rng, 60, test::small_engine_config(), lexicon, &visited);
    ASSERT_FALSE(violation) << *violation;
    seen.insert(visited.begin(), visited.end());
  }
  EXPECT_EQ(seen.size(), 5u);
}

TEST(EngineSafety, NamesAreStable) {
  EXPECT_EQ(to_string(Phase::fading_out), "fading_out");
  EXPECT_EQ(event_name(Event{Tick{0}}), "tick");
  EXPECT_EQ(event_name(Event{NoFace{}}), "no_face");
}

}  // namespace
}  // namespace mirror::ritual
