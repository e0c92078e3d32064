// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include "mirror/service/assets.hpp"

#include "mirror/error.hpp"
#include "mirror/fer/network.hpp"
#include "mirror/poet/ngram.hpp"
#include "mirror/poet/remote.hpp"

namespace mirror::service {
namespace {

// Loader messages usually name the asset already; make sure they all do.
template <class F>
auto load_as(const std::string& asset, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const std::exception& e) {
    const std::string msg = e.what();
    if (msg.rfind(asset + ":", 0) == 0 || msg.rfind(asset + " ", 0) == 0) throw LoadError(msg);
    throw LoadError(asset + ": " + msg);
  }
}

}  // namespace

std::shared_ptr<const Assets> load_assets(const ServiceConfig& config) {
  auto cascade = load_as("cascade", [&] { return vision::load_cascade(config.cascade); });
  auto net = load_as("weights", [&] { return fer::load_weights_file(config.weights); });
  auto lexicon = load_as("lexicon", [&] {
    return config.lexicon ? affect::load_lexicon(*config.lexicon)
                          : affect::EmotionLexicon::defaults();
  });

  std::shared_ptr<const poet::PoemGenerator> generator;
  if (config.backend.kind == BackendKind::ngram) {
    std::shared_ptr<const poet::NgramModel> model;
    if (config.backend.ngram_model) {
      model = load_as("ngram", [&] {
        return std::make_shared<const poet::NgramModel>(poet::load_ngram(*config.backend.ngram_model));
      });
    } else {
      const auto docs = load_as("corpus", [&] { return poet::read_corpus(*config.backend.corpus); });
      model = load_as("corpus", [&] {
        return std::make_shared<const poet::NgramModel>(
            poet::train_ngram(docs, config.backend.order, config.backend.alpha));
      });
    }
    generator = std::make_shared<const poet::SamplingGenerator>(
        std::make_shared<const poet::NgramBackend>(std::move(model)));
  } else {
    generator = load_as("remote", [&] {
      return std::make_shared<const poet::RemoteGenerator>(
          poet::RemoteEndpoint{config.backend.remote_url, config.backend.remote_timeout});
    });
  }

  auto assets = std::make_shared<Assets>(Assets{
      std::move(cascade),
      std::make_shared<const fer::NetworkClassifier>(std::move(net),
                                                     config.weights.filename().string()),
      std::move(lexicon), std::move(generator), {}});
  const auto& c = assets->cascade;
  assets->identities = {
      "cascade: " + config.cascade.filename().string() + " (" + std::to_string(c.stages().size()) +
          " stages, " + std::to_string(c.base_width()) + "x" + std::to_string(c.base_height()) + ")",
      "weights: " + assets->classifier->identity(),
      "lexicon: " + (config.lexicon ? config.lexicon->filename().string() : std::string("built-in")),
      "backend: " + assets->generator->identity(),
  };
  return assets;
}

ritual::PipelineDeps pipeline_deps(const Assets& assets, const ServiceConfig& config) {
  ritual::PipelineDeps deps;
  deps.cascade = &assets.cascade;
  deps.detection = config.detection;
  deps.classifier = assets.classifier.get();
  deps.lexicon = &assets.lexicon;
  deps.generator = assets.generator.get();
  deps.params = config.generation;
  deps.fallback_line = config.fallback_line;
  return deps;
}

}  // namespace mirror::service
