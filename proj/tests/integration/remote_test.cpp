// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "mirror/error.hpp"
#include "mirror/poet/poem.hpp"
#include "mirror/poet/remote.hpp"

namespace mirror::poet {
namespace {

using namespace std::chrono_literals;

// A scripted generation endpoint on an ephemeral port.
class StubServer {
 public:
  StubServer() {
    server_.Post("/ok", [this](const httplib::Request& req, httplib::Response& res) {
      last_request_ = nlohmann::json::parse(req.body);
      const auto seed = last_request_.at("seed_text").get<std::string>();
      res.set_content(nlohmann::json{{"text", seed + " and the river keeps your name.\nand the"}}.dump(),
                      "application/json");
    });
    server_.Post("/slow", [](const httplib::Request&, httplib::Response& res) {
      std::this_thread::sleep_for(600ms);
      res.set_content(R"({"text":"late"})", "application/json");
    });
    server_.Post("/fail", [](const httplib::Request&, httplib::Response& res) {
      res.status = 500;
      res.set_content("boom", "text/plain");
    });
    server_.Post("/garbage", [](const httplib::Request&, httplib::Response& res) {
      res.set_content("<html>", "text/html");
    });
    server_.Post("/empty", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(R"({"text":""})", "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~StubServer() {
    server_.stop();
    thread_.join();
  }
  std::string url(const std::string& path) const {
    return "http://127.0.0.1:" + std::to_string(port_) + path;
  }
  nlohmann::json last_request_;

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

const affect::SeedText kSeed = affect::SeedText::make("You can be", "hopeful");

std::string error_of(const StubServer& stub, const std::string& path,
                     std::chrono::milliseconds timeout = 2000ms) {
  try {
    remote_generate({stub.url(path), timeout}, kSeed, GenerationParams{});
  } catch (const GenerationError& e) {
    return e.what();
  }
  return "no error";
}

TEST(Remote, SendsSeedAndParameters) {
  StubServer stub;
  GenerationParams params;
  params.top_k = 7;
  const auto text = remote_generate({stub.url("/ok"), 2000ms}, kSeed, params);
  EXPECT_EQ(text.rfind(kSeed.text, 0), 0u);
  EXPECT_EQ(stub.last_request_["seed_text"], kSeed.text);
  EXPECT_EQ(stub.last_request_["top_k"], 7);
  EXPECT_EQ(stub.last_request_["max_words"], 80);
}

TEST(Remote, TextIsTrimmedLikeLocalOutput) {
  StubServer stub;
  RemoteGenerator generator({stub.url("/ok"), 2000ms});
  Rng rng(0);
  const auto poem = make_poem(generator, kSeed, GenerationParams{}, rng);
  EXPECT_EQ(poem.body, "You can be hopeful and the river keeps your name.");
  EXPECT_EQ(generator.identity(), "remote:" + stub.url("/ok"));
}

TEST(Remote, FailuresBecomeGenerationErrors) {
  StubServer stub;
  EXPECT_EQ(error_of(stub, "/fail"), "remote: HTTP status 500");
  EXPECT_NE(error_of(stub, "/garbage").find("remote: malformed response"), std::string::npos);
  EXPECT_NE(error_of(stub, "/empty").find("empty"), std::string::npos);
  EXPECT_NE(error_of(stub, "/missing").find("HTTP status 404"), std::string::npos);
}

TEST(Remote, TimeoutIsReported) {
  StubServer stub;
  const auto started = std::chrono::steady_clock::now();
  EXPECT_EQ(error_of(stub, "/slow", 200ms), "remote: timed out after 200 ms");
  EXPECT_LT(std::chrono::steady_clock::now() - started, 2s);
}

TEST(Remote, UnreachableAndInvalidUrls) {
  int port = 0;
  {
    httplib::Server probe;
    port = probe.bind_to_any_port("127.0.0.1");
  }
  EXPECT_THROW(remote_generate({"http://127.0.0.1:" + std::to_string(port) + "/g", 500ms}, kSeed,
                               GenerationParams{}),
               GenerationError);
  EXPECT_THROW(RemoteGenerator({"ftp://example/x", 500ms}), ConfigError);
}

}  // namespace
}  // namespace mirror::poet
