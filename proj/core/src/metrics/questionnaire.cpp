// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include "mirror/metrics/questionnaire.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mirror/error.hpp"

namespace mirror::metrics {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// RFC 4180 style: quoted fields may contain commas and doubled quotes.
std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(trim(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  if (quoted) throw ConfigError("responses line " + std::to_string(line_no) + ": unclosed quote");
  fields.push_back(trim(field));
  return fields;
}

// Accepts "q5", "Q5" or "5".
std::optional<int> parse_question(std::string_view key) {
  if (!key.empty() && (key.front() == 'q' || key.front() == 'Q')) key.remove_prefix(1);
  int q = 0;
  const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), q);
  if (ec != std::errc{} || ptr != key.data() + key.size()) return std::nullopt;
  if (q < 1 || q > kQuestionCount) return std::nullopt;
  return q;
}

}  // namespace

std::string_view to_string(Component c) {
  switch (c) {
    case Component::connectedness: return "connectedness";
    case Component::coherence: return "coherence";
    case Component::resonance: return "resonance";
    case Component::purpose: return "purpose";
    case Component::significance: return "significance";
  }
  return "unknown";
}

std::optional<Component> parse_component(std::string_view name) {
  const auto key = lower(std::string(name));
  for (auto c : kAllComponents) {
    if (to_string(c) == key) return c;
  }
  return std::nullopt;
}

void validate_response(const QuestionnaireResponse& response) {
  if (response.participant_id.empty()) throw ConfigError("response without participant id");
  for (int i = 0; i < kQuestionCount; ++i) {
    const int a = response.answers[static_cast<std::size_t>(i)];
    if (a < 1 || a > 5) {
      throw ConfigError("participant " + response.participant_id + ": q" + std::to_string(i + 1) +
                        " = " + std::to_string(a) + " is outside 1..5");
    }
  }
}

ComponentMap ComponentMap::defaults() {
  ComponentMap m;
  m.assign(1, Component::connectedness);
  m.assign(6, Component::connectedness);
  m.assign(5, Component::significance);
  m.assign(7, Component::purpose);
  m.assign(12, Component::purpose);
  m.assign(8, Component::coherence);
  m.assign(9, Component::resonance);
  return m;
}

void ComponentMap::assign(int question, Component component) {
  if (question < 1 || question > kQuestionCount) {
    throw ConfigError("component map: no question " + std::to_string(question));
  }
  auto& slot = map_[static_cast<std::size_t>(question - 1)];
  const auto previous = slot;
  slot = component;
  if (questions_for(component).size() > static_cast<std::size_t>(kQuestionsPerComponent)) {
    slot = previous;
    throw ConfigError("component map: " + std::string(to_string(component)) +
                      " already has three questions");
  }
}

std::optional<Component> ComponentMap::component_of(int question) const {
  if (question < 1 || question > kQuestionCount) return std::nullopt;
  return map_[static_cast<std::size_t>(question - 1)];
}

std::vector<int> ComponentMap::questions_for(Component component) const {
  std::vector<int> out;
  for (int q = 1; q <= kQuestionCount; ++q) {
    if (map_[static_cast<std::size_t>(q - 1)] == component) out.push_back(q);
  }
  return out;
}

bool ComponentMap::is_total() const {
  return std::all_of(map_.begin(), map_.end(), [](const auto& c) { return c.has_value(); });
}

ComponentMap parse_component_map(std::string_view json_text, bool start_from_defaults) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("component map: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("component map: expected a JSON object");

  // Clear overridden questions first so reassignments do not trip the
  // three-per-component limit halfway through.
  std::vector<std::pair<int, Component>> entries;
  for (const auto& [key, value] : doc.items()) {
    const auto q = parse_question(key);
    if (!q) throw ConfigError("component map: bad question key '" + key + "'");
    if (!value.is_string()) throw ConfigError("component map: " + key + " must be a string");
    const auto c = parse_component(value.get<std::string>());
    if (!c) {
      throw ConfigError("component map: unknown component '" + value.get<std::string>() + "'");
    }
    entries.emplace_back(*q, *c);
  }
  ComponentMap base = start_from_defaults ? ComponentMap::defaults() : ComponentMap{};
  ComponentMap out;
  for (int q = 1; q <= kQuestionCount; ++q) {
    const bool overridden = std::any_of(entries.begin(), entries.end(),
                                        [q](const auto& e) { return e.first == q; });
    if (!overridden) {
      if (auto c = base.component_of(q)) out.assign(q, *c);
    }
  }
  for (const auto& [q, c] : entries) out.assign(q, c);
  return out;
}

ComponentMap load_component_map(const std::filesystem::path& path, bool start_from_defaults) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("component map: not found: " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_component_map(text.str(), start_from_defaults);
}

std::vector<QuestionnaireResponse> parse_responses_csv(std::string_view text) {
  std::vector<QuestionnaireResponse> out;
  std::optional<std::size_t> id_column;
  std::array<std::size_t, kQuestionCount> q_column{};
  bool have_header = false;

  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    const auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line, line_no);

    if (!have_header) {
      std::array<bool, kQuestionCount> seen{};
      for (std::size_t i = 0; i < fields.size(); ++i) {
        const auto name = lower(fields[i]);
        if (name == "participant_id") {
          id_column = i;
        } else if (auto q = parse_question(name); q && name.front() == 'q') {
          q_column[static_cast<std::size_t>(*q - 1)] = i;
          seen[static_cast<std::size_t>(*q - 1)] = true;
        }
      }
      if (!id_column) throw ConfigError("responses: header has no participant_id column");
      for (int q = 0; q < kQuestionCount; ++q) {
        if (!seen[static_cast<std::size_t>(q)]) {
          throw ConfigError("responses: header has no q" + std::to_string(q + 1) + " column");
        }
      }
      have_header = true;
      continue;
    }

    QuestionnaireResponse r;
    if (*id_column >= fields.size()) {
      throw ConfigError("responses line " + std::to_string(line_no) + ": missing participant_id");
    }
    r.participant_id = fields[*id_column];
    for (std::size_t q = 0; q < q_column.size(); ++q) {
      const auto col = q_column[q];
      const std::string who = r.participant_id.empty() ? "line " + std::to_string(line_no)
                                                       : "participant " + r.participant_id;
      if (col >= fields.size() || fields[col].empty()) {
        throw ConfigError(who + ": missing answer to q" + std::to_string(q + 1));
      }
      int a = 0;
      const auto& f = fields[col];
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), a);
      if (ec != std::errc{} || ptr != f.data() + f.size()) {
        throw ConfigError(who + ": q" + std::to_string(q + 1) + " = '" + f + "' is not an integer");
      }
      r.answers[q] = a;
    }
    validate_response(r);
    out.push_back(std::move(r));
  }
  if (!have_header) throw ConfigError("responses: empty file");
  return out;
}

std::vector<QuestionnaireResponse> read_responses_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("responses: not found: " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_responses_csv(text.str());
}

}  // namespace mirror::metrics
