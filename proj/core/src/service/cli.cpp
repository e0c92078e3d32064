// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include "mirror/service/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "mirror/error.hpp"
#include "mirror/metrics/report.hpp"
#include "mirror/poet/ngram.hpp"
#include "mirror/ritual/pipeline.hpp"
#include "mirror/ritual/session.hpp"
#include "mirror/service/assets.hpp"
#include "mirror/service/bench.hpp"
#include "mirror/service/server.hpp"
#include "mirror/vision/cascade.hpp"

#ifndef MIRROR_DEFAULT_CONFIG
#define MIRROR_DEFAULT_CONFIG "mirror.json"
#endif

namespace mirror::service {
namespace {

std::filesystem::path default_config() {
  if (const char* env = std::getenv("MIRROR_CONFIG"); env && *env) return env;
  return MIRROR_DEFAULT_CONFIG;
}

void log_to_stderr() {
  static const bool once = [] {
    auto logger = spdlog::stderr_color_mt("mirror");
    spdlog::set_default_logger(logger);
    if (const char* level = std::getenv("MIRROR_LOG"); level && *level) {
      spdlog::set_level(spdlog::level::from_str(level));
    } else {
      spdlog::set_level(spdlog::level::warn);
    }
    return true;
  }();
  (void)once;
}

void write_file(const std::filesystem::path& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw LoadError("cannot write " + path.string());
}

struct Commands {
  Commands(std::ostream& o, std::ostream& e) : out(o), err(e) {}

  std::ostream& out;
  std::ostream& err;

  std::filesystem::path config_path = default_config();
  std::optional<int> port;
  std::filesystem::path image;
  std::optional<std::uint64_t> seed;
  bool verbose = false;
  std::filesystem::path corpus;
  std::filesystem::path model_out;
  int order = 3;
  double alpha = 0.01;
  std::filesystem::path responses;
  std::optional<std::filesystem::path> component_map;
  std::optional<std::filesystem::path> json_out;
  std::filesystem::path frames;
  int repeat = 3;
  std::filesystem::path store;
  ritual::TimestampMs since = 0;
  std::filesystem::path xml;
  std::filesystem::path cascade_out;

  int run() {
    auto config = load_service_config(config_path);
    if (port) config.port = static_cast<std::uint16_t>(*port);
    Service service(std::move(config));
    out << "mirror listening on port " << service.port() << "\n";
    for (const auto& id : service.asset_identities()) out << "  " << id << "\n";
    out << "ready" << std::endl;
    service.run_until_signal();
    return 0;
  }

  int process() {
    const auto config = load_service_config(config_path);
    const auto assets = load_assets(config);
    const auto frame = vision::read_pnm(image);
    Rng rng(seed.value_or(config.engine.seed));
    const auto result = ritual::run_pipeline_once(frame, pipeline_deps(*assets, config), rng);
    if (verbose) {
      const auto& t = result.timings;
      err << "detect " << t.detect_ms << " ms, classify " << t.classify_ms << " ms, generate "
          << t.generate_ms << " ms\n";
      if (result.face) {
        err << "face " << result.face->x << "," << result.face->y << " " << result.face->w << "x"
            << result.face->h << ", word '" << result.emotion_word << "'\n";
      }
    }
    if (!result.poem) {
      out << "no face\n";
      return 0;
    }
    out << result.poem->body << "\n";
    return 0;
  }

  int train_ngram() {
    const auto docs = poet::read_corpus(corpus);
    const auto model = poet::train_ngram(docs, order, alpha);
    poet::save_ngram(model_out, model);
    out << "trained order-" << model.order() << " model on " << docs.size() << " documents: "
        << model.vocab_size() << " words, " << model.table().size() << " contexts -> "
        << model_out.string() << "\n";
    return 0;
  }

  int score() {
    const auto rows = metrics::read_responses_csv(responses);
    const auto map = component_map ? metrics::load_component_map(*component_map)
                                   : metrics::ComponentMap::defaults();
    const auto report = metrics::component_report(rows, map);
    std::optional<metrics::CorrelationMatrix> corr;
    if (rows.size() >= 3) corr = metrics::correlation_matrix(rows);
    out << metrics::format_report(report, corr ? &*corr : nullptr);
    if (json_out) write_file(*json_out, metrics::report_json(report, corr ? &*corr : nullptr));
    return 0;
  }

  int bench() {
    const auto config = load_service_config(config_path);
    const auto report = run_bench(config, list_frames(frames), repeat, seed.value_or(config.engine.seed));
    out << format_bench(report);
    return 0;
  }

  int history() {
    ritual::SessionStore s(store, [this](const std::string& w) { err << "warning: " << w << "\n"; });
    for (const auto& p : s.mood_history(since)) {
      out << p.timestamp_ms << " " << affect::to_string(p.category) << " " << p.confidence << "\n";
    }
    return 0;
  }

  int convert_cascade() {
    const auto cascade = vision::load_cascade(xml);
    const auto bytes = vision::serialize_cascade_binary(cascade);
    write_file(cascade_out,
               std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
    out << "wrote " << cascade.stages().size() << " stages to " << cascade_out.string() << "\n";
    return 0;
  }
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  log_to_stderr();
  Commands cmd(out, err);
  std::function<int()> action;

  CLI::App app{"mirror: an affective mirror that answers a face with a poem", "mirror"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every command");

  auto* run = app.add_subcommand("run", "Start the service (websocket + static UI)");
  run->add_option("--config", cmd.config_path, "Service config (JSON)");
  run->add_option("--port", cmd.port, "Override the listen port")->check(CLI::Range(0, 65535));
  run->callback([&] { action = [&] { return cmd.run(); }; });

  auto* process = app.add_subcommand("process", "Run the pipeline once on an image and print the poem");
  process->add_option("--image", cmd.image, "PGM/PPM image")->required();
  process->add_option("--config", cmd.config_path, "Service config (JSON)");
  process->add_option("--seed", cmd.seed, "Random seed (default: engine.seed from the config)");
  process->add_flag("-v,--verbose", cmd.verbose, "Print timings and the detected face to stderr");
  process->callback([&] { action = [&] { return cmd.process(); }; });

  auto* train = app.add_subcommand("train-ngram", "Train an n-gram model from a %%-separated corpus");
  train->add_option("--corpus", cmd.corpus, "Corpus text file")->required();
  train->add_option("--out", cmd.model_out, "Output model (JSON)")->required();
  train->add_option("--order", cmd.order, "n-gram order")->check(CLI::Range(2, 8));
  train->add_option("--alpha", cmd.alpha, "Additive smoothing constant")->check(CLI::NonNegativeNumber);
  train->callback([&] { action = [&] { return cmd.train_ngram(); }; });

  auto* score = app.add_subcommand("score", "Summarize questionnaire responses");
  score->add_option("--responses", cmd.responses, "CSV: participant_id,q1..q15")->required();
  score->add_option("--component-map", cmd.component_map, "JSON question -> component map");
  score->add_option("--json-out", cmd.json_out, "Write the machine-readable summary here");
  score->callback([&] { action = [&] { return cmd.score(); }; });

  auto* bench = app.add_subcommand("bench", "Time detect/classify/generate over a directory of frames");
  bench->add_option("--frames", cmd.frames, "Directory of PGM/PPM frames")->required();
  bench->add_option("--config", cmd.config_path, "Service config (JSON)");
  bench->add_option("--repeat", cmd.repeat, "Passes over the frames")->check(CLI::Range(1, 1000));
  bench->add_option("--seed", cmd.seed, "Random seed");
  bench->callback([&] { action = [&] { return cmd.bench(); }; });

  auto* history = app.add_subcommand("history", "Print the logged mood history");
  history->add_option("--store", cmd.store, "Session log (JSONL)")->required();
  history->add_option("--since", cmd.since, "Only entries at or after this time (ms since epoch)");
  history->callback([&] { action = [&] { return cmd.history(); }; });

  auto* convert = app.add_subcommand("convert-cascade", "Convert a cascade XML file to the binary format");
  convert->add_option("--xml", cmd.xml, "Cascade XML")->required();
  convert->add_option("--out", cmd.cascade_out, "Output .hcas file")->required();
  convert->callback([&] { action = [&] { return cmd.convert_cascade(); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    return action ? action() : 2;
  } catch (const StageError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const LoadError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return 1;
}

}  // namespace mirror::service
