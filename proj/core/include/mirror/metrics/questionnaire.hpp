// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mirror::metrics {

inline constexpr int kQuestionCount = 15;
inline constexpr int kQuestionsPerComponent = 3;

/// The five components of meaning.
enum class Component { connectedness, coherence, resonance, purpose, significance };

inline constexpr std::array<Component, 5> kAllComponents{
    Component::connectedness, Component::coherence, Component::resonance, Component::purpose,
    Component::significance};

std::string_view to_string(Component c);
std::optional<Component> parse_component(std::string_view name);

struct QuestionnaireResponse {
  std::string participant_id;
  /// answers[i] is question i + 1, each in 1..5.
  std::array<int, kQuestionCount> answers{};
};

/// Throws ConfigError naming the participant.
void validate_response(const QuestionnaireResponse& response);

/// Question (1..15) to component. May be partial; no component takes more
/// than three questions.
class ComponentMap {
 public:
  ComponentMap() = default;

  /// The seven assignments known a priori: Q1, Q6 connectedness; Q5
  /// significance; Q7, Q12 purpose; Q8 coherence; Q9 resonance.
  static ComponentMap defaults();

  /// Throws ConfigError for a bad question number or a fourth question on
  /// one component.
  void assign(int question, Component component);
  std::optional<Component> component_of(int question) const;
  std::vector<int> questions_for(Component component) const;
  bool is_total() const;

 private:
  std::array<std::optional<Component>, kQuestionCount> map_{};
};

/// JSON object {"q1": "connectedness", ...}. Listed questions override the
/// defaults when `start_from_defaults` is set.
ComponentMap parse_component_map(std::string_view json_text, bool start_from_defaults = true);
ComponentMap load_component_map(const std::filesystem::path& path, bool start_from_defaults = true);

/// CSV with a header row containing participant_id and q1..q15 (any order).
/// Throws ConfigError with the line number or participant id on bad input.
std::vector<QuestionnaireResponse> parse_responses_csv(std::string_view text);
std::vector<QuestionnaireResponse> read_responses_csv(const std::filesystem::path& path);

}  // namespace mirror::metrics
