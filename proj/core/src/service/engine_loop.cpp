// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include "mirror/service/engine_loop.hpp"

#include <chrono>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <optional>
#include <thread>
#include <variant>

#include <spdlog/spdlog.h>

#include "mirror/error.hpp"
#include "mirror/ritual/pipeline.hpp"
#include "mirror/ritual/session.hpp"

namespace mirror::service {
namespace {

using Clock = std::chrono::steady_clock;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Worker failures travel through the mailbox so they are broadcast in order.
struct Notice {
  ErrorMessage error;
};
using MailItem = std::variant<ritual::Event, Notice>;

struct Timer {
  Clock::time_point due;
  ritual::Event event;
};

struct GenerationJob {
  std::uint64_t generation;
  affect::SeedText seed;
};

}  // namespace

struct EngineLoop::Impl {
  std::shared_ptr<const Assets> assets;
  ServiceConfig config;
  Sink sink;
  std::optional<ritual::SessionStore> store;

  mutable std::mutex mu;
  std::condition_variable loop_cv;
  std::condition_variable analysis_cv;
  std::condition_variable generation_cv;
  bool running = false;
  bool stopping = false;
  std::deque<MailItem> mailbox;
  std::optional<vision::GrayImage> frame_slot;
  std::deque<GenerationJob> generation_jobs;
  Stats stats;
  ritual::Phase phase = ritual::Phase::idle;

  // Loop thread only.
  ritual::RitualState state;
  std::vector<Timer> timers;

  std::thread loop_thread;
  std::thread analysis_thread;
  std::thread generation_thread;

  void push(MailItem item) {
    {
      std::lock_guard lock(mu);
      if (stopping) return;
      mailbox.push_back(std::move(item));
    }
    loop_cv.notify_one();
  }

  void run_loop() {
    std::unique_lock lock(mu);
    while (!stopping) {
      auto next_due = Clock::time_point::max();
      for (const auto& t : timers) next_due = std::min(next_due, t.due);
      if (mailbox.empty()) {
        if (next_due == Clock::time_point::max()) {
          loop_cv.wait(lock, [&] { return stopping || !mailbox.empty(); });
        } else {
          loop_cv.wait_until(lock, next_due, [&] { return stopping || !mailbox.empty(); });
        }
      }
      if (stopping) break;

      std::deque<MailItem> batch;
      batch.swap(mailbox);
      const auto now = Clock::now();
      std::vector<ritual::Event> expired;
      std::erase_if(timers, [&](const Timer& t) {
        if (t.due > now) return false;
        expired.push_back(t.event);
        return true;
      });
      lock.unlock();

      for (auto& e : expired) dispatch(e);
      for (auto& item : batch) {
        std::visit(Overloaded{[&](const ritual::Event& e) { dispatch(e); },
                              [&](const Notice& n) { sink(n.error); }},
                   item);
      }
      lock.lock();
      phase = state.phase;
    }
  }

  void dispatch(const ritual::Event& event) {
    apply(ritual::Tick{ritual::now_ms()});
    apply(event);
  }

  void apply(const ritual::Event& event) {
    const auto before = state.phase;
    auto result = ritual::transition(state, event, config.engine, assets->lexicon);
    if (!result.handled) {
      spdlog::debug("engine: ignored {} in phase {}", ritual::event_name(event),
                    ritual::to_string(before));
    }
    state = std::move(result.state);
    if (state.phase != before) {
      {
        std::lock_guard lock(mu);
        phase = state.phase;
      }
      sink(StateMessage{state.phase});
    }
    for (auto& action : result.actions) execute(action);
  }

  void execute(ritual::Action& action) {
    std::visit(
        Overloaded{
            [&](ritual::StartGeneration& a) {
              sink(EmotionMessage{a.probabilities, a.seed.emotion_word});
              timers.push_back({Clock::now() + config.generation_timeout,
                                ritual::PoemFailed{a.generation,
                                                   "generation timed out after " +
                                                       std::to_string(config.generation_timeout.count()) +
                                                       " ms"}});
              {
                std::lock_guard lock(mu);
                generation_jobs.push_back({a.generation, std::move(a.seed)});
                ++stats.generations;
              }
              generation_cv.notify_one();
            },
            [&](ritual::ShowPoem& a) {
              sink(PoemMessage{a.poem.body, a.fade_in_ms, config.engine.fade_out_ms,
                               a.poem.fallback});
              timers.push_back({Clock::now() + std::chrono::milliseconds(a.fade_in_ms),
                                ritual::FadeInDone{}});
            },
            [&](ritual::FadeOut& a) {
              timers.push_back({Clock::now() + std::chrono::milliseconds(a.fade_out_ms),
                                ritual::FadeOutDone{}});
            },
            [&](ritual::LogSession& a) {
              if (!store) return;
              try {
                store->append(a.entry);
                std::lock_guard lock(mu);
                ++stats.sessions_logged;
              } catch (const std::exception& e) {
                // Logging is best-effort; the ritual continues.
                spdlog::warn("session log: {}", e.what());
              }
            },
        },
        action);
  }

  void run_analysis() {
    const auto deps = pipeline_deps(*assets, config);
    std::unique_lock lock(mu);
    while (true) {
      analysis_cv.wait(lock, [&] { return stopping || frame_slot.has_value(); });
      if (stopping) return;
      auto frame = std::move(*frame_slot);
      frame_slot.reset();
      lock.unlock();

      try {
        const auto a = ritual::analyze_frame(frame, *deps.cascade, deps.detection, *deps.classifier);
        if (a.probabilities) {
          push(ritual::Event{ritual::FaceSeen{*a.probabilities, a.detect_ms, a.classify_ms}});
        } else {
          push(ritual::Event{ritual::NoFace{a.detect_ms}});
        }
      } catch (const StageError& e) {
        push(Notice{{e.stage(), e.what()}});
      } catch (const std::exception& e) {
        push(Notice{{"analyze", e.what()}});
      }

      lock.lock();
      ++stats.frames_analyzed;
    }
  }

  void run_generation() {
    std::unique_lock lock(mu);
    while (true) {
      generation_cv.wait(lock, [&] { return stopping || !generation_jobs.empty(); });
      if (stopping) return;
      auto job = std::move(generation_jobs.front());
      generation_jobs.pop_front();
      lock.unlock();

      Rng rng(mix_seed(mix_seed(config.engine.seed, job.generation), 0));
      const auto start = Clock::now();
      try {
        auto poem = poet::make_poem(*assets->generator, job.seed, config.generation, rng,
                                    config.fallback_line);
        const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
        push(ritual::Event{ritual::PoemReady{job.generation, std::move(poem), ms}});
      } catch (const std::exception& e) {
        push(Notice{{"generate", e.what()}});
        push(ritual::Event{ritual::PoemFailed{job.generation, e.what()}});
      }
      lock.lock();
    }
  }
};

EngineLoop::EngineLoop(std::shared_ptr<const Assets> assets, ServiceConfig config, Sink sink)
    : impl_(std::make_unique<Impl>()) {
  if (!assets) throw ConfigError("engine loop needs assets");
  config.engine.validate();
  impl_->assets = std::move(assets);
  impl_->config = std::move(config);
  impl_->sink = std::move(sink);
  if (!impl_->sink) impl_->sink = [](const ServerMessage&) {};
  if (impl_->config.session_store) {
    impl_->store.emplace(*impl_->config.session_store,
                         [](const std::string& w) { spdlog::warn("session log: {}", w); });
  }
}

EngineLoop::~EngineLoop() { stop(); }

void EngineLoop::start() {
  std::lock_guard lock(impl_->mu);
  if (impl_->running || impl_->stopping) return;
  impl_->running = true;
  impl_->loop_thread = std::thread([this] { impl_->run_loop(); });
  impl_->analysis_thread = std::thread([this] { impl_->run_analysis(); });
  impl_->generation_thread = std::thread([this] { impl_->run_generation(); });
}

void EngineLoop::stop() {
  {
    std::lock_guard lock(impl_->mu);
    if (impl_->stopping) return;
    impl_->stopping = true;
  }
  impl_->loop_cv.notify_all();
  impl_->analysis_cv.notify_all();
  impl_->generation_cv.notify_all();
  for (auto* t : {&impl_->loop_thread, &impl_->analysis_thread, &impl_->generation_thread}) {
    if (t->joinable()) t->join();
  }
}

void EngineLoop::submit_frame(vision::GrayImage frame) {
  {
    std::lock_guard lock(impl_->mu);
    if (impl_->stopping) return;
    ++impl_->stats.frames_submitted;
    if (impl_->frame_slot) ++impl_->stats.frames_dropped;
    impl_->frame_slot = std::move(frame);
  }
  impl_->analysis_cv.notify_one();
}

void EngineLoop::post(ritual::Event event) { impl_->push(std::move(event)); }

ritual::Phase EngineLoop::phase() const {
  std::lock_guard lock(impl_->mu);
  return impl_->phase;
}

EngineLoop::Stats EngineLoop::stats() const {
  std::lock_guard lock(impl_->mu);
  return impl_->stats;
}

}  // namespace mirror::service
