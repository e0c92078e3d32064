// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include "mirror/ritual/pipeline.hpp"

#include <chrono>

#include "mirror/error.hpp"
#include "mirror/vision/preprocess.hpp"

namespace mirror::ritual {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

template <class F>
auto in_stage(const char* stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

}  // namespace

FrameAnalysis analyze_frame(const vision::GrayImage& frame, const vision::Cascade& cascade,
                            const vision::DetectionParams& detection,
                            const fer::ClassifierBackend& classifier) {
  FrameAnalysis out;
  auto start = Clock::now();
  out.face = in_stage("detect", [&] {
    const auto faces = vision::detect_faces(frame, cascade, detection);
    return vision::largest_face(faces);
  });
  out.detect_ms = elapsed_ms(start);
  if (!out.face) return out;

  start = Clock::now();
  out.probabilities = in_stage("classify", [&] {
    return classifier.classify(vision::preprocess_face(frame, *out.face));
  });
  out.classify_ms = elapsed_ms(start);
  return out;
}

PipelineResult run_pipeline_once(const vision::GrayImage& frame, const PipelineDeps& deps,
                                 Rng& rng) {
  if (!deps.cascade || !deps.classifier || !deps.lexicon || !deps.generator) {
    throw ConfigError("pipeline: missing dependency");
  }
  PipelineResult out;
  auto analysis = analyze_frame(frame, *deps.cascade, deps.detection, *deps.classifier);
  out.face = analysis.face;
  out.probabilities = analysis.probabilities;
  out.timings.detect_ms = analysis.detect_ms;
  out.timings.classify_ms = analysis.classify_ms;
  if (!out.probabilities) return out;

  const auto start = Clock::now();
  out.poem = in_stage("generate", [&] {
    out.emotion_word = affect::map_emotion(*out.probabilities, *deps.lexicon);
    const auto seed = affect::compose_seed(out.emotion_word, *deps.lexicon, rng);
    return poet::make_poem(*deps.generator, seed, deps.params, rng, deps.fallback_line);
  });
  out.timings.generate_ms = elapsed_ms(start);
  return out;
}

}  // namespace mirror::ritual
