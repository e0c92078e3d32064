// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include "mirror/poet/remote.hpp"

#include <httplib.h>

#include <nlohmann/json.hpp>

#include "mirror/error.hpp"

namespace mirror::poet {
namespace {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

SplitUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos || url.compare(0, scheme_end, "http") != 0) {
    throw ConfigError("remote: unsupported url '" + url + "' (expected http://host:port/path)");
  }
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

std::string remote_generate(const RemoteEndpoint& endpoint, const affect::SeedText& seed,
                            const GenerationParams& params) {
  const auto [origin, path] = split_url(endpoint.url);
  httplib::Client client(origin);
  const auto timeout = std::chrono::duration_cast<std::chrono::microseconds>(endpoint.timeout);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);

  const nlohmann::json request{{"seed_text", seed.text},
                               {"max_words", params.max_words},
                               {"temperature", params.temperature},
                               {"top_k", params.top_k}};
  const auto started = std::chrono::steady_clock::now();
  auto response = client.Post(path, request.dump(), "application/json");
  const auto elapsed = std::chrono::steady_clock::now() - started;

  if (!response) {
    if (elapsed >= endpoint.timeout) {
      throw GenerationError("remote: timed out after " +
                            std::to_string(endpoint.timeout.count()) + " ms");
    }
    throw GenerationError("remote: " + httplib::to_string(response.error()));
  }
  if (response->status != 200) {
    throw GenerationError("remote: HTTP status " + std::to_string(response->status));
  }
  try {
    const auto body = nlohmann::json::parse(response->body);
    const auto& text = body.at("text");
    if (!text.is_string() || text.get_ref<const std::string&>().empty()) {
      throw GenerationError("remote: response has an empty \"text\"");
    }
    return text.get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw GenerationError(std::string("remote: malformed response: ") + e.what());
  }
}

RemoteGenerator::RemoteGenerator(RemoteEndpoint endpoint) : endpoint_(std::move(endpoint)) {
  split_url(endpoint_.url);
}

RawText RemoteGenerator::generate(const affect::SeedText& seed, const GenerationParams& params,
                                  Rng&) const {
  return {remote_generate(endpoint_, seed, params), false};
}

std::string RemoteGenerator::identity() const { return "remote:" + endpoint_.url; }

}  // namespace mirror::poet
