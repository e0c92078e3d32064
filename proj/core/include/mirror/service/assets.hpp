// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mirror/affect/lexicon.hpp"
#include "mirror/fer/classifier.hpp"
#include "mirror/poet/generator.hpp"
#include "mirror/ritual/pipeline.hpp"
#include "mirror/service/config.hpp"
#include "mirror/vision/cascade.hpp"

namespace mirror::service {

/// Everything the pipeline needs, loaded once at startup and then shared
/// read-only between workers.
struct Assets {
  vision::Cascade cascade;
  std::shared_ptr<const fer::ClassifierBackend> classifier;
  affect::EmotionLexicon lexicon;
  std::shared_ptr<const poet::PoemGenerator> generator;
  /// One human-readable line per asset, e.g. "weights: fer-net:... (12 layers)".
  std::vector<std::string> identities;
};

/// Throws LoadError whose message starts with the asset name
/// ("cascade: ", "weights: ", "lexicon: ", "ngram: ", "corpus: ", "remote: ").
std::shared_ptr<const Assets> load_assets(const ServiceConfig& config);

/// Non-owning view for run_pipeline_once; `assets` must outlive it.
ritual::PipelineDeps pipeline_deps(const Assets& assets, const ServiceConfig& config);

}  // namespace mirror::service
