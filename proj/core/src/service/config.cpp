// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include "mirror/service/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mirror/error.hpp"

namespace mirror::service {
namespace {

using json = nlohmann::json;

void only_keys(const json& obj, std::string_view section,
               std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw ConfigError("config: " + std::string(section) + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError("config: unknown key '" + key + "' in " + std::string(section));
  }
}

template <class T>
void read(const json& obj, const char* key, T& out) {
  if (auto it = obj.find(key); it != obj.end()) out = it->template get<T>();
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_relative() && !base.empty() ? base / path : path;
}

void read_path(const json& obj, const char* key, const std::filesystem::path& base,
               std::optional<std::filesystem::path>& out) {
  if (auto it = obj.find(key); it != obj.end() && !it->is_null()) {
    out = resolve(base, it->get<std::string>());
  }
}

ServiceConfig parse(const json& doc, const std::filesystem::path& base) {
  ServiceConfig c;
  only_keys(doc, "top level",
            {"listen", "assets", "backend", "generation", "detection", "engine", "session_store",
             "ui_root"});

  if (auto it = doc.find("listen"); it != doc.end()) {
    only_keys(*it, "listen", {"address", "port"});
    read(*it, "address", c.listen_address);
    int port = c.port;
    read(*it, "port", port);
    if (port < 0 || port > 65535) throw ConfigError("config: listen.port out of range");
    c.port = static_cast<std::uint16_t>(port);
  }

  const auto& assets = doc.at("assets");
  only_keys(assets, "assets", {"cascade", "weights", "lexicon"});
  c.cascade = resolve(base, assets.at("cascade").get<std::string>());
  c.weights = resolve(base, assets.at("weights").get<std::string>());
  read_path(assets, "lexicon", base, c.lexicon);

  const auto& backend = doc.at("backend");
  only_keys(backend, "backend", {"kind", "ngram_model", "corpus", "order", "alpha", "remote"});
  const auto kind = backend.at("kind").get<std::string>();
  if (kind == "ngram") {
    c.backend.kind = BackendKind::ngram;
    read_path(backend, "ngram_model", base, c.backend.ngram_model);
    read_path(backend, "corpus", base, c.backend.corpus);
    read(backend, "order", c.backend.order);
    read(backend, "alpha", c.backend.alpha);
    if (c.backend.ngram_model.has_value() == c.backend.corpus.has_value()) {
      throw ConfigError("config: ngram backend needs exactly one of ngram_model or corpus");
    }
    if (backend.contains("remote")) {
      throw ConfigError("config: backend.remote given but backend.kind is ngram");
    }
  } else if (kind == "remote") {
    c.backend.kind = BackendKind::remote;
    const auto& remote = backend.at("remote");
    only_keys(remote, "backend.remote", {"url", "timeout_ms"});
    c.backend.remote_url = remote.at("url").get<std::string>();
    int timeout = static_cast<int>(c.backend.remote_timeout.count());
    read(remote, "timeout_ms", timeout);
    if (timeout < 1) throw ConfigError("config: backend.remote.timeout_ms must be positive");
    c.backend.remote_timeout = std::chrono::milliseconds(timeout);
    if (backend.contains("ngram_model") || backend.contains("corpus")) {
      throw ConfigError("config: ngram settings given but backend.kind is remote");
    }
  } else {
    throw ConfigError("config: backend.kind must be \"ngram\" or \"remote\", got \"" + kind + "\"");
  }

  if (auto it = doc.find("generation"); it != doc.end()) {
    only_keys(*it, "generation",
              {"max_words", "min_words", "temperature", "top_k", "max_attempts", "fallback_line",
               "timeout_ms"});
    auto& g = c.generation;
    read(*it, "max_words", g.max_words);
    read(*it, "min_words", g.min_words);
    read(*it, "temperature", g.temperature);
    read(*it, "top_k", g.top_k);
    read(*it, "max_attempts", g.max_attempts);
    read(*it, "fallback_line", c.fallback_line);
    int timeout = static_cast<int>(c.generation_timeout.count());
    read(*it, "timeout_ms", timeout);
    if (timeout < 1) throw ConfigError("config: generation.timeout_ms must be positive");
    c.generation_timeout = std::chrono::milliseconds(timeout);
  }
  c.generation.validate();

  if (auto it = doc.find("detection"); it != doc.end()) {
    only_keys(*it, "detection",
              {"scale_factor", "min_neighbors", "min_width", "min_height", "group_eps"});
    auto& d = c.detection;
    read(*it, "scale_factor", d.scale_factor);
    read(*it, "min_neighbors", d.min_neighbors);
    read(*it, "min_width", d.min_width);
    read(*it, "min_height", d.min_height);
    read(*it, "group_eps", d.group_eps);
    if (!(d.scale_factor > 1.0)) throw ConfigError("config: detection.scale_factor must exceed 1");
    if (d.min_neighbors < 1) throw ConfigError("config: detection.min_neighbors must be >= 1");
    if (d.min_width < 1 || d.min_height < 1) {
      throw ConfigError("config: detection minimum size must be positive");
    }
  }

  if (auto it = doc.find("engine"); it != doc.end()) {
    only_keys(*it, "engine",
              {"activate_frames", "absence_frames", "window_size", "fade_in_ms", "fade_out_ms",
               "seed"});
    auto& e = c.engine;
    read(*it, "activate_frames", e.activate_frames);
    read(*it, "absence_frames", e.absence_frames);
    read(*it, "window_size", e.window_size);
    read(*it, "fade_in_ms", e.fade_in_ms);
    read(*it, "fade_out_ms", e.fade_out_ms);
    read(*it, "seed", e.seed);
  }
  c.engine.validate();

  read_path(doc, "session_store", base, c.session_store);
  read_path(doc, "ui_root", base, c.ui_root);
  return c;
}

}  // namespace

ServiceConfig parse_service_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  try {
    return parse(json::parse(json_text), base_dir);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

ServiceConfig load_service_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: not found: " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_service_config(text.str(), path.parent_path());
}

}  // namespace mirror::service
