// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include "mirror/poet/ngram.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mirror/error.hpp"

namespace mirror::poet {
namespace {

using json = nlohmann::json;

constexpr std::string_view kFormat = "mirror-ngram";
constexpr int kFormatVersion = 1;

bool is_separator(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

void check_hyper(int order, double alpha) {
  if (order < 2) throw ConfigError("ngram: order must be at least 2");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw ConfigError("ngram: smoothing constant must be finite and >= 0");
  }
}

// Contexts are stored with BOS as -1 so the JSON stays readable.
json encode_id(TokenId id) {
  return id == NgramModel::kBeginOfText ? json(-1) : json(id);
}

TokenId decode_id(const json& v) {
  const auto n = v.get<std::int64_t>();
  if (n == -1) return NgramModel::kBeginOfText;
  if (n < 0 || n >= NgramModel::kBeginOfText) throw ConfigError("ngram: token id out of range");
  return static_cast<TokenId>(n);
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string word;
  auto flush = [&] {
    if (!word.empty()) tokens.push_back(std::move(word));
    word.clear();
  };
  for (char c : text) {
    if (c == '\n') {
      flush();
      tokens.emplace_back(kNewlineToken);
    } else if (is_separator(c)) {
      flush();
    } else {
      word.push_back(c);
    }
  }
  flush();
  return tokens;
}

std::vector<std::string> split_corpus(std::string_view text) {
  std::vector<std::string> documents;
  std::string current;
  auto finish = [&] {
    bool has_content = false;
    for (char c : current) has_content = has_content || !(is_separator(c) || c == '\n');
    if (has_content) documents.push_back(current);
    current.clear();
  };
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    const auto line = strip_cr(text.substr(pos, end - pos));
    if (line == "%%") {
      finish();
    } else {
      if (!current.empty()) current.push_back('\n');
      current.append(line);
    }
    pos = end + 1;
  }
  finish();
  return documents;
}

std::vector<std::string> read_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("corpus: not found: " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return split_corpus(text.str());
}

std::size_t NgramModel::ContextHash::operator()(const std::vector<TokenId>& ctx) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (TokenId t : ctx) h = (h ^ t) * 0x100000001b3ull;
  return h ^ ctx.size();
}

NgramModel::NgramModel(int order, double alpha, std::vector<std::string> vocabulary, Table table)
    : order_(order), alpha_(alpha), vocabulary_(std::move(vocabulary)), table_(std::move(table)) {
  check_hyper(order_, alpha_);
  if (vocabulary_.empty() || vocabulary_.front() != kEndOfTextToken) {
    throw ConfigError("ngram: vocabulary must start with the end-of-text token");
  }
  for (std::size_t i = 0; i < vocabulary_.size(); ++i) {
    if (!ids_.emplace(vocabulary_[i], static_cast<TokenId>(i)).second) {
      throw ConfigError("ngram: duplicate vocabulary entry '" + vocabulary_[i] + "'");
    }
  }
  const auto v = static_cast<TokenId>(vocabulary_.size());
  for (const auto& [ctx, succ] : table_) {
    if (ctx.size() >= static_cast<std::size_t>(order_)) {
      throw ConfigError("ngram: context longer than order - 1");
    }
    for (TokenId t : ctx) {
      if (t >= v && t != kBeginOfText) throw ConfigError("ngram: context uses unknown id");
    }
    std::uint64_t total = 0;
    for (const auto& [next, n] : succ.counts) {
      if (next >= v) throw ConfigError("ngram: successor uses unknown id");
      total += n;
    }
    if (total != succ.total) throw ConfigError("ngram: successor counts do not add up");
  }
}

TokenId NgramModel::token_id(std::string_view word) const {
  auto it = ids_.find(std::string(word));
  return it == ids_.end() ? kUnknown : it->second;
}

std::uint64_t NgramModel::count(std::span<const TokenId> context, TokenId next) const {
  auto it = table_.find(std::vector<TokenId>(context.begin(), context.end()));
  if (it == table_.end()) return 0;
  auto jt = it->second.counts.find(next);
  return jt == it->second.counts.end() ? 0 : jt->second;
}

std::optional<std::size_t> NgramModel::backoff_length(std::span<const TokenId> context) const {
  const std::size_t longest = std::min(context.size(), static_cast<std::size_t>(order_ - 1));
  for (std::size_t k = longest + 1; k-- > 0;) {
    std::vector<TokenId> suffix(context.end() - static_cast<std::ptrdiff_t>(k), context.end());
    auto it = table_.find(suffix);
    if (it != table_.end() && it->second.total > 0) return k;
  }
  return std::nullopt;
}

std::vector<double> NgramModel::next_logits(std::span<const TokenId> context) const {
  const double v = static_cast<double>(vocabulary_.size());
  const auto k = backoff_length(context);
  if (!k) return std::vector<double>(vocabulary_.size(), -std::log(v));

  const std::vector<TokenId> suffix(context.end() - static_cast<std::ptrdiff_t>(*k),
                                    context.end());
  const auto& succ = table_.at(suffix);
  const double denom = static_cast<double>(succ.total) + alpha_ * v;
  std::vector<double> logits(vocabulary_.size(), std::log(alpha_ / denom));
  for (const auto& [next, n] : succ.counts) {
    logits[next] = std::log((static_cast<double>(n) + alpha_) / denom);
  }
  return logits;
}

NgramModel train_ngram(std::span<const std::string> documents, int order, double alpha) {
  check_hyper(order, alpha);
  std::vector<std::string> vocabulary{std::string(kEndOfTextToken)};
  std::unordered_map<std::string, TokenId> ids{{std::string(kEndOfTextToken), 0}};
  NgramModel::Table table;
  std::size_t used_documents = 0;

  for (const auto& doc : documents) {
    auto words = tokenize(doc);
    std::size_t first = 0, last = words.size();
    while (first < last && words[first] == kNewlineToken) ++first;
    while (last > first && words[last - 1] == kNewlineToken) --last;
    if (first == last) continue;
    ++used_documents;

    std::vector<TokenId> seq{NgramModel::kBeginOfText};
    for (std::size_t i = first; i < last; ++i) {
      auto [it, inserted] = ids.emplace(words[i], static_cast<TokenId>(vocabulary.size()));
      if (inserted) vocabulary.push_back(words[i]);
      seq.push_back(it->second);
    }
    seq.push_back(0);

    for (std::size_t i = 1; i < seq.size(); ++i) {
      const std::size_t longest = std::min(i, static_cast<std::size_t>(order - 1));
      for (std::size_t k = 0; k <= longest; ++k) {
        std::vector<TokenId> ctx(seq.begin() + static_cast<std::ptrdiff_t>(i - k),
                                 seq.begin() + static_cast<std::ptrdiff_t>(i));
        auto& succ = table[std::move(ctx)];
        ++succ.counts[seq[i]];
        ++succ.total;
      }
    }
  }
  if (used_documents == 0) throw ConfigError("ngram: corpus has no tokens");
  return {order, alpha, std::move(vocabulary), std::move(table)};
}

std::string serialize_ngram(const NgramModel& model) {
  // Sorted so the same model always serializes to the same bytes.
  std::vector<const NgramModel::Table::value_type*> entries;
  for (const auto& entry : model.table()) entries.push_back(&entry);
  std::sort(entries.begin(), entries.end(),
            [](const auto* a, const auto* b) { return a->first < b->first; });

  json contexts = json::array();
  for (const auto* entry : entries) {
    json ctx = json::array();
    for (TokenId t : entry->first) ctx.push_back(encode_id(t));
    std::vector<std::pair<TokenId, std::uint64_t>> next(entry->second.counts.begin(),
                                                        entry->second.counts.end());
    std::sort(next.begin(), next.end());
    json next_json = json::array();
    for (const auto& [id, n] : next) next_json.push_back({id, n});
    contexts.push_back({{"context", std::move(ctx)}, {"next", std::move(next_json)}});
  }
  json doc{{"format", kFormat},       {"version", kFormatVersion},
           {"order", model.order()},  {"alpha", model.alpha()},
           {"vocabulary", model.vocabulary()}, {"contexts", std::move(contexts)}};
  return doc.dump() + "\n";
}

NgramModel parse_ngram(std::string_view json_text) {
  try {
    const auto doc = json::parse(json_text);
    if (doc.at("format").get<std::string>() != kFormat) throw ConfigError("ngram: wrong format tag");
    if (doc.at("version").get<int>() != kFormatVersion) {
      throw ConfigError("ngram: unsupported version");
    }
    NgramModel::Table table;
    for (const auto& entry : doc.at("contexts")) {
      std::vector<TokenId> ctx;
      for (const auto& id : entry.at("context")) ctx.push_back(decode_id(id));
      auto& succ = table[std::move(ctx)];
      for (const auto& pair : entry.at("next")) {
        const auto id = decode_id(pair.at(0));
        const auto n = pair.at(1).get<std::uint64_t>();
        succ.counts[id] += n;
        succ.total += n;
      }
    }
    return {doc.at("order").get<int>(), doc.at("alpha").get<double>(),
            doc.at("vocabulary").get<std::vector<std::string>>(), std::move(table)};
  } catch (const json::exception& e) {
    throw LoadError(std::string("ngram: ") + e.what());
  } catch (const ConfigError& e) {
    throw LoadError(e.what());
  }
}

void save_ngram(const std::filesystem::path& path, const NgramModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw LoadError("ngram: cannot write " + path.string());
  out << serialize_ngram(model);
  if (!out) throw LoadError("ngram: write failed for " + path.string());
}

NgramModel load_ngram(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("ngram: not found: " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_ngram(text.str());
}

NgramBackend::NgramBackend(std::shared_ptr<const NgramModel> model) : model_(std::move(model)) {
  if (!model_) throw ConfigError("ngram backend needs a model");
}

TokenBackend::Context NgramBackend::begin(std::string_view seed_text) const {
  Context ctx{NgramModel::kBeginOfText};
  for (const auto& word : tokenize(seed_text)) ctx.push_back(model_->token_id(word));
  return ctx;
}

std::vector<double> NgramBackend::next_logits(const Context& context) const {
  return model_->next_logits(context);
}

std::string NgramBackend::decode(std::span<const TokenId> tokens) const {
  std::string out;
  for (TokenId t : tokens) {
    const auto& word = model_->vocabulary().at(t);
    if (word == kNewlineToken) {
      out.push_back('\n');
    } else {
      if (out.empty() || out.back() != '\n') out.push_back(' ');
      out += word;
    }
  }
  return out;
}

std::string NgramBackend::identity() const {
  return "ngram(order=" + std::to_string(model_->order()) +
         ", vocab=" + std::to_string(model_->vocab_size()) + ")";
}

}  // namespace mirror::poet
