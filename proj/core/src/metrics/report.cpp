// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include "mirror/metrics/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "mirror/error.hpp"

namespace mirror::metrics {
namespace {

using json = nlohmann::json;

std::vector<double> column(std::span<const QuestionnaireResponse> responses, int question) {
  std::vector<double> out;
  out.reserve(responses.size());
  for (const auto& r : responses) {
    out.push_back(r.answers[static_cast<std::size_t>(question - 1)]);
  }
  return out;
}

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  // Avoid printing "-0.00".
  if (std::string_view(buf) == "-0.00") return "0.00";
  return buf;
}

std::string stats_line(const DescriptiveStats& s) {
  std::string line = "mean " + fixed2(s.mean) + " sd " + (s.sd ? fixed2(*s.sd) : "n/a");
  line += " min " + fixed2(s.min) + " q1 " + fixed2(s.q1) + " median " + fixed2(s.median) +
          " q3 " + fixed2(s.q3) + " max " + fixed2(s.max) + " n " + std::to_string(s.n);
  return line;
}

json stats_json(const DescriptiveStats& s) {
  return {{"n", s.n},          {"mean", s.mean}, {"sd", s.sd ? json(*s.sd) : json(nullptr)},
          {"min", s.min},      {"q1", s.q1},     {"median", s.median},
          {"q3", s.q3},        {"max", s.max}};
}

}  // namespace

ComponentReport component_report(std::span<const QuestionnaireResponse> responses,
                                 const ComponentMap& map) {
  if (responses.empty()) throw StatsError("component report: no responses");
  for (const auto& r : responses) validate_response(r);

  ComponentReport report;
  report.participants = responses.size();
  for (int q = 1; q <= kQuestionCount; ++q) {
    report.questions.push_back({q, five_number_summary(column(responses, q))});
  }
  for (auto c : kAllComponents) {
    ComponentStats cs{c, map.questions_for(c), std::nullopt, false};
    cs.complete = cs.questions.size() == static_cast<std::size_t>(kQuestionsPerComponent);
    std::vector<double> pooled;
    for (int q : cs.questions) {
      const auto col = column(responses, q);
      pooled.insert(pooled.end(), col.begin(), col.end());
    }
    if (!pooled.empty()) cs.stats = five_number_summary(pooled);
    report.components.push_back(std::move(cs));
  }
  return report;
}

CorrelationMatrix correlation_matrix(std::span<const QuestionnaireResponse> responses) {
  if (responses.size() < 3) throw StatsError("correlation matrix: needs at least 3 participants");
  CorrelationMatrix m;
  std::vector<std::vector<double>> cols;
  for (int q = 1; q <= kQuestionCount; ++q) {
    cols.push_back(column(responses, q));
    const auto& c = cols.back();
    m.constant[static_cast<std::size_t>(q - 1)] =
        std::all_of(c.begin(), c.end(), [&](double v) { return v == c.front(); });
  }
  for (std::size_t a = 0; a < cols.size(); ++a) {
    if (m.constant[a]) continue;
    m.cells[a][a] = {1.0, 0.0};
    for (std::size_t b = a + 1; b < cols.size(); ++b) {
      if (m.constant[b]) continue;
      const double r = pearson_r(cols[a], cols[b]);
      const double p = p_value_r(r, responses.size());
      m.cells[a][b] = {r, p};
      m.cells[b][a] = {r, p};
    }
  }
  return m;
}

std::vector<CorrelationPair> strongest_correlations(const CorrelationMatrix& m, std::size_t count) {
  std::vector<CorrelationPair> pairs;
  for (int a = 1; a <= kQuestionCount; ++a) {
    for (int b = a + 1; b <= kQuestionCount; ++b) {
      const auto& cell = m.at(a, b);
      if (cell.r) pairs.push_back({a, b, *cell.r, *cell.p});
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) {
    return std::fabs(x.r) > std::fabs(y.r);
  });
  if (pairs.size() > count) pairs.resize(count);
  return pairs;
}

std::string format_report(const ComponentReport& report, const CorrelationMatrix* correlations) {
  std::string out = "participants " + std::to_string(report.participants) + "\n\nquestions\n";
  for (const auto& q : report.questions) {
    out += "Q" + std::to_string(q.question) + " " + stats_line(q.stats) + "\n";
  }
  out += "\ncomponents\n";
  for (const auto& c : report.components) {
    out += std::string(to_string(c.component)) + " [";
    for (std::size_t i = 0; i < c.questions.size(); ++i) {
      out += (i ? " Q" : "Q") + std::to_string(c.questions[i]);
    }
    out += "]";
    if (!c.complete) {
      out += " (" + std::to_string(c.questions.size()) + " of " +
             std::to_string(kQuestionsPerComponent) + " questions assigned)";
    }
    out += c.stats ? " " + stats_line(*c.stats) : std::string(" no data");
    out += "\n";
  }
  if (correlations) {
    out += "\nstrongest correlations\n";
    for (const auto& p : strongest_correlations(*correlations, 5)) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "Q%d-Q%d r %.2f p %.2g\n", p.a, p.b, p.r, p.p);
      out += buf;
    }
    std::string constant;
    for (int q = 1; q <= kQuestionCount; ++q) {
      if (correlations->constant[static_cast<std::size_t>(q - 1)]) {
        constant += " Q" + std::to_string(q);
      }
    }
    if (!constant.empty()) out += "constant answers, not correlated:" + constant + "\n";
  }
  return out;
}

std::string report_json(const ComponentReport& report, const CorrelationMatrix* correlations) {
  json doc;
  doc["participants"] = report.participants;
  json questions = json::array();
  for (const auto& q : report.questions) {
    auto s = stats_json(q.stats);
    s["question"] = q.question;
    questions.push_back(std::move(s));
  }
  doc["questions"] = std::move(questions);
  json components = json::array();
  for (const auto& c : report.components) {
    components.push_back({{"component", to_string(c.component)},
                          {"questions", c.questions},
                          {"complete", c.complete},
                          {"stats", c.stats ? stats_json(*c.stats) : json(nullptr)}});
  }
  doc["components"] = std::move(components);
  if (correlations) {
    json r = json::array(), p = json::array();
    for (const auto& row : correlations->cells) {
      json rr = json::array(), pp = json::array();
      for (const auto& cell : row) {
        rr.push_back(cell.r ? json(*cell.r) : json(nullptr));
        pp.push_back(cell.p ? json(*cell.p) : json(nullptr));
      }
      r.push_back(std::move(rr));
      p.push_back(std::move(pp));
    }
    doc["correlations"] = {{"r", std::move(r)},
                           {"p", std::move(p)},
                           {"constant", correlations->constant}};
  }
  return doc.dump(2) + "\n";
}

}  // namespace mirror::metrics
