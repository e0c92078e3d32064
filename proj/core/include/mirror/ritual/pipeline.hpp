// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>

#include "mirror/affect/lexicon.hpp"
#include "mirror/fer/classifier.hpp"
#include "mirror/poet/poem.hpp"
#include "mirror/random.hpp"
#include "mirror/ritual/session.hpp"
#include "mirror/vision/detect.hpp"

namespace mirror::ritual {

/// Everything one frame-to-poem pass needs. Non-owning.
struct PipelineDeps {
  const vision::Cascade* cascade = nullptr;
  vision::DetectionParams detection;
  const fer::ClassifierBackend* classifier = nullptr;
  const affect::EmotionLexicon* lexicon = nullptr;
  const poet::PoemGenerator* generator = nullptr;
  poet::GenerationParams params;
  std::string fallback_line{poet::kDefaultFallbackLine};
};

/// Detection and classification of a single frame.
struct FrameAnalysis {
  std::optional<vision::FaceBox> face;
  std::optional<affect::EmotionProbabilities> probabilities;
  double detect_ms = 0.0;
  double classify_ms = 0.0;
};

/// Largest detected face, preprocessed and classified. Failures are
/// rethrown as StageError ("detect" or "classify").
FrameAnalysis analyze_frame(const vision::GrayImage& frame, const vision::Cascade& cascade,
                            const vision::DetectionParams& detection,
                            const fer::ClassifierBackend& classifier);

struct PipelineResult {
  std::optional<poet::Poem> poem;
  std::optional<vision::FaceBox> face;
  std::optional<affect::EmotionProbabilities> probabilities;
  std::string emotion_word;
  PipelineTimings timings;
};

/// detect -> largest face -> preprocess -> classify -> map -> seed -> poem.
/// With no face only detect_ms is set and nothing is generated. Stage
/// failures are thrown as StageError.
PipelineResult run_pipeline_once(const vision::GrayImage& frame, const PipelineDeps& deps, Rng& rng);

}  // namespace mirror::ritual
