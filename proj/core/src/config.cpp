// Copyright 2026 The winsumm Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "winsumm/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "winsumm/error.hpp"

namespace winsumm {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_number(std::string_view key, std::string_view v) {
  T out{};
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw UsageError("bad value '" + std::string(v) + "' for '" + std::string(key) + "'");
  return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw UsageError("bad boolean '" + std::string(v) + "' for '" + std::string(key) + "'");
}

std::string fmt(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

const std::vector<std::string>& run_config_keys() {
  static const std::vector<std::string> keys = {
      "corpus", "vectors", "out", "checkpoint", "seed", "epochs", "lr", "rho", "eps", "clip_norm",
      "label_method", "window", "label_metric", "window_scoring", "label_empty_blocks",
      "encoder", "word_dim", "lstm_hidden", "attention_heads", "pos_buckets", "w_pos_class",
      "w_neg_class", "novelty", "budget", "min_count", "max_sents", "max_toks", "split"};
  return keys;
}

void RunConfig::set(std::string_view key, std::string_view raw) {
  const std::string v = trim(raw);
  if (key == "corpus") corpus_dir = v;
  else if (key == "vectors") vectors_path = v;
  else if (key == "out") output_dir = v;
  else if (key == "checkpoint") checkpoint = v;
  else if (key == "seed") seed = parse_number<std::uint64_t>(key, v);
  else if (key == "epochs") epochs = parse_number<std::size_t>(key, v);
  else if (key == "lr") optimizer.lr = parse_number<double>(key, v);
  else if (key == "rho") optimizer.rho = parse_number<double>(key, v);
  else if (key == "eps") optimizer.eps = parse_number<double>(key, v);
  else if (key == "clip_norm") optimizer.clip_norm = parse_number<double>(key, v);
  else if (key == "label_method") labels.method = parse_label_method(v);
  else if (key == "window") labels.window.window = parse_number<std::size_t>(key, v);
  else if (key == "label_metric") labels.window.metric = parse_rouge_metric(v);
  else if (key == "window_scoring") labels.window.scoring = parse_window_scoring(v);
  else if (key == "label_empty_blocks") labels.window.label_empty_blocks = parse_bool(key, v);
  else if (key == "encoder") model.doc_encoder = parse_doc_encoder(v);
  else if (key == "word_dim") model.word_dim = parse_number<std::size_t>(key, v);
  else if (key == "lstm_hidden") model.lstm_hidden = parse_number<std::size_t>(key, v);
  else if (key == "attention_heads") model.attention_heads = parse_number<std::size_t>(key, v);
  else if (key == "pos_buckets") model.pos_buckets = parse_number<std::size_t>(key, v);
  else if (key == "w_pos_class") model.w_pos_class = parse_number<double>(key, v);
  else if (key == "w_neg_class") model.w_neg_class = parse_number<double>(key, v);
  else if (key == "novelty") model.novelty = parse_novelty_mode(v);
  else if (key == "budget") budget = parse_number<double>(key, v);
  else if (key == "min_count") min_count = parse_number<int>(key, v);
  else if (key == "max_sents") max_sents = parse_number<std::size_t>(key, v);
  else if (key == "max_toks") max_toks = parse_number<std::size_t>(key, v);
  else if (key == "split") {
    // "train:valid:test", e.g. 10:1:1
    std::array<double, 3> parts{};
    std::size_t start = 0;
    for (std::size_t k = 0; k < 3; ++k) {
      const auto colon = v.find(':', start);
      if ((k < 2) != (colon != std::string::npos))
        throw UsageError("split must look like 10:1:1, got '" + v + "'");
      const auto end = k < 2 ? colon : v.size();
      parts[k] = parse_number<double>(key, std::string_view(v).substr(start, end - start));
      start = end + 1;
    }
    split = parts;
  } else {
    throw UsageError("unknown configuration key '" + std::string(key) + "'");
  }
}

std::vector<std::pair<std::string, std::string>> RunConfig::to_pairs() const {
  return {
      {"corpus", corpus_dir.string()},
      {"vectors", vectors_path.string()},
      {"out", output_dir.string()},
      {"checkpoint", checkpoint.string()},
      {"seed", std::to_string(seed)},
      {"epochs", std::to_string(epochs)},
      {"lr", fmt(optimizer.lr)},
      {"rho", fmt(optimizer.rho)},
      {"eps", fmt(optimizer.eps)},
      {"clip_norm", fmt(optimizer.clip_norm)},
      {"label_method", std::string(to_string(labels.method))},
      {"window", std::to_string(labels.window.window)},
      {"label_metric", std::string(to_string(labels.window.metric))},
      {"window_scoring", std::string(to_string(labels.window.scoring))},
      {"label_empty_blocks", labels.window.label_empty_blocks ? "true" : "false"},
      {"encoder", std::string(to_string(model.doc_encoder))},
      {"word_dim", std::to_string(model.word_dim)},
      {"lstm_hidden", std::to_string(model.lstm_hidden)},
      {"attention_heads", std::to_string(model.attention_heads)},
      {"pos_buckets", std::to_string(model.pos_buckets)},
      {"w_pos_class", fmt(model.w_pos_class)},
      {"w_neg_class", fmt(model.w_neg_class)},
      {"novelty", std::string(to_string(model.novelty))},
      {"budget", fmt(budget)},
      {"min_count", std::to_string(min_count)},
      {"max_sents", std::to_string(max_sents)},
      {"max_toks", std::to_string(max_toks)},
      {"split", fmt(split[0]) + ":" + fmt(split[1]) + ":" + fmt(split[2])},
  };
}

void RunConfig::validate() const {
  if (epochs < 1) throw UsageError("epochs must be >= 1");
  if (!(budget > 0.0) || budget > 1.0) throw UsageError("budget must be in (0, 1]");
  if (labels.window.window < 1) throw UsageError("window must be >= 1");
  if (min_count < 1) throw UsageError("min_count must be >= 1");
  if (max_sents < 1 || max_toks < 1) throw UsageError("max_sents and max_toks must be >= 1");
  if (!(optimizer.lr > 0.0)) throw UsageError("lr must be positive");
  ModelConfig m = model;
  m.vocab_size = std::max<std::size_t>(m.vocab_size, 2);
  m.validate();
}

std::filesystem::path RunConfig::checkpoint_path() const {
  return checkpoint.empty() ? output_dir / "model.ckpt" : checkpoint;
}

void apply_run_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read config file: " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw UsageError(path.string() + ":" + std::to_string(line_no) + ": expected key = value");
    try {
      config.set(trim(std::string_view(body).substr(0, eq)), std::string_view(body).substr(eq + 1));
    } catch (const UsageError& e) {
      throw UsageError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

RunConfig load_run_config(const std::filesystem::path& path) {
  RunConfig config;
  apply_run_config_file(config, path);
  return config;
}

}  // namespace winsumm
