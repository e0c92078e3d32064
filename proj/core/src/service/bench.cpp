// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include "mirror/service/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "mirror/error.hpp"
#include "mirror/random.hpp"
#include "mirror/ritual/pipeline.hpp"
#include "mirror/service/assets.hpp"

namespace mirror::service {
namespace {

StageSummary summarize(std::string stage, const std::vector<double>& samples) {
  StageSummary s{std::move(stage), samples.size(), {}, {}, {}};
  if (!samples.empty()) {
    s.p50 = percentile(samples, 0.50);
    s.p90 = percentile(samples, 0.90);
    s.p99 = percentile(samples, 0.99);
  }
  return s;
}

std::string ms(const std::optional<double>& v) {
  if (!v) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", *v);
  return buf;
}

}  // namespace

double percentile(std::vector<double> samples, double q) {
  if (samples.empty()) throw StatsError("percentile of an empty sample");
  std::sort(samples.begin(), samples.end());
  const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(samples.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, samples.size() - 1);
  return samples[lo] + (pos - static_cast<double>(lo)) * (samples[hi] - samples[lo]);
}

std::vector<std::filesystem::path> list_frames(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw LoadError("frames: not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto ext = entry.path().extension();
    if (entry.is_regular_file() && (ext == ".pgm" || ext == ".ppm" || ext == ".pnm")) {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  if (out.empty()) throw LoadError("frames: no .pgm/.ppm files in " + dir.string());
  return out;
}

BenchReport run_bench(const ServiceConfig& config, const std::vector<std::filesystem::path>& frames,
                      int repeat, std::uint64_t seed) {
  if (repeat < 1) throw ConfigError("bench: repeat must be at least 1");
  const auto assets = load_assets(config);
  const auto deps = pipeline_deps(*assets, config);

  std::vector<vision::GrayImage> images;
  for (const auto& f : frames) images.push_back(vision::read_pnm(f));

  std::vector<double> detect, classify, generate, full_totals, all_totals;
  BenchReport report;
  report.frames = images.size();
  std::uint64_t run = 0;
  for (int r = 0; r < repeat; ++r) {
    for (const auto& image : images) {
      Rng rng(mix_seed(seed, run++));
      const auto result = ritual::run_pipeline_once(image, deps, rng);
      ++report.runs;
      detect.push_back(result.timings.detect_ms);
      if (result.probabilities) classify.push_back(result.timings.classify_ms);
      all_totals.push_back(result.timings.total_ms());
      if (result.poem) {
        generate.push_back(result.timings.generate_ms);
        full_totals.push_back(result.timings.total_ms());
        ++report.full_runs;
      }
    }
  }
  const auto& totals = full_totals.empty() ? all_totals : full_totals;
  report.stages = {summarize("detect", detect), summarize("classify", classify),
                   summarize("generate", generate), summarize("total", totals)};
  report.total_median_ms = percentile(totals, 0.5);
  return report;
}

std::string format_bench(const BenchReport& report) {
  std::string out = "frames " + std::to_string(report.frames) + ", runs " +
                    std::to_string(report.runs) + ", with face " +
                    std::to_string(report.full_runs) + "\n";
  for (const auto& s : report.stages) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-9s p50 %s ms  p90 %s ms  p99 %s ms  (n=%zu)\n",
                  s.stage.c_str(), ms(s.p50).c_str(), ms(s.p90).c_str(), ms(s.p99).c_str(),
                  s.samples);
    out += buf;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "total median %.2f ms (budget %.0f ms): %s\n",
                report.total_median_ms, report.budget_ms,
                report.within_budget() ? "within budget" : "over budget");
  out += buf;
  return out;
}

}  // namespace mirror::service
