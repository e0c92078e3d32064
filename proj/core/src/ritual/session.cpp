// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include "mirror/ritual/session.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace mirror::ritual {
namespace {

using json = nlohmann::json;

json probabilities_to_json(const affect::EmotionProbabilities& p) {
  json out = json::object();
  for (auto c : affect::kAllCategories) out[std::string(affect::to_string(c))] = p[c];
  return out;
}

affect::EmotionProbabilities probabilities_from_json(const json& j) {
  std::array<double, affect::kCategoryCount> values{};
  for (auto c : affect::kAllCategories) {
    values[affect::index_of(c)] = j.at(std::string(affect::to_string(c))).get<double>();
  }
  return affect::EmotionProbabilities::from_values(values);
}

}  // namespace

TimestampMs now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::string_view to_string(Outcome outcome) {
  return outcome == Outcome::displayed ? "displayed" : "failed";
}

std::string serialize_entry(const SessionEntry& e) {
  json j{{"ts_ms", e.timestamp_ms},
         {"probabilities", probabilities_to_json(e.probabilities)},
         {"emotion_word", e.emotion_word},
         {"seed_text", e.seed_text},
         {"poem_body", e.poem_body},
         {"display_duration_ms", nullptr},
         {"timings",
          {{"detect_ms", e.timings.detect_ms},
           {"classify_ms", e.timings.classify_ms},
           {"generate_ms", e.timings.generate_ms}}},
         {"outcome", to_string(e.outcome)},
         {"failure_reason", e.failure_reason},
         {"fallback", e.fallback}};
  if (e.display_duration_ms) j["display_duration_ms"] = *e.display_duration_ms;
  return j.dump();
}

SessionEntry parse_entry(std::string_view line) {
  try {
    const auto j = json::parse(line);
    SessionEntry e;
    e.timestamp_ms = j.at("ts_ms").get<TimestampMs>();
    e.probabilities = probabilities_from_json(j.at("probabilities"));
    e.emotion_word = j.at("emotion_word").get<std::string>();
    e.seed_text = j.at("seed_text").get<std::string>();
    e.poem_body = j.at("poem_body").get<std::string>();
    if (const auto& d = j.at("display_duration_ms"); !d.is_null()) {
      e.display_duration_ms = d.get<std::int64_t>();
    }
    const auto& t = j.at("timings");
    e.timings = {t.at("detect_ms").get<double>(), t.at("classify_ms").get<double>(),
                 t.at("generate_ms").get<double>()};
    const auto outcome = j.at("outcome").get<std::string>();
    if (outcome == "displayed") {
      e.outcome = Outcome::displayed;
    } else if (outcome == "failed") {
      e.outcome = Outcome::failed;
    } else {
      throw std::invalid_argument("unknown outcome '" + outcome + "'");
    }
    e.failure_reason = j.value("failure_reason", "");
    e.fallback = j.value("fallback", false);
    return e;
  } catch (const json::exception& ex) {
    throw std::invalid_argument(std::string("session record: ") + ex.what());
  }
}

SessionStore::SessionStore(std::filesystem::path path, Warning warn)
    : path_(std::move(path)), warn_(std::move(warn)) {
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  std::ofstream touch(path_, std::ios::app | std::ios::binary);
  if (!touch) throw std::runtime_error("session store: cannot open " + path_.string());
}

void SessionStore::append(const SessionEntry& entry) {
  bool needs_newline = false;
  {
    std::ifstream in(path_, std::ios::binary | std::ios::ate);
    if (in && in.tellg() > 0) {
      in.seekg(-1, std::ios::end);
      needs_newline = in.get() != '\n';
    }
  }
  std::ofstream out(path_, std::ios::app | std::ios::binary);
  if (!out) throw std::runtime_error("session store: cannot open " + path_.string());
  // Terminate a partial record so it stays a single unreadable line.
  if (needs_newline) out << '\n';
  out << serialize_entry(entry) << '\n';
  out.flush();
  if (!out) throw std::runtime_error("session store: write failed for " + path_.string());
}

std::vector<SessionEntry> SessionStore::read_all() const {
  std::vector<SessionEntry> entries;
  std::ifstream in(path_, std::ios::binary);
  if (!in) return entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      entries.push_back(parse_entry(line));
    } catch (const std::exception& e) {
      if (warn_) {
        warn_(path_.string() + ":" + std::to_string(line_no) + ": skipped record (" + e.what() +
              ")");
      }
    }
  }
  return entries;
}

std::vector<MoodPoint> SessionStore::mood_history(TimestampMs since) const {
  std::vector<MoodPoint> points;
  for (const auto& e : read_all()) {
    if (e.timestamp_ms < since) continue;
    const auto d = affect::dominant_emotion(e.probabilities);
    points.push_back({e.timestamp_ms, d.category, d.confidence});
  }
  std::stable_sort(points.begin(), points.end(), [](const MoodPoint& a, const MoodPoint& b) {
    return a.timestamp_ms < b.timestamp_ms;
  });
  return points;
}

}  // namespace mirror::ritual
