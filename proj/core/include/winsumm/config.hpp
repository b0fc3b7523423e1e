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

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "winsumm/labeling.hpp"
#include "winsumm/model.hpp"
#include "winsumm/optim.hpp"

namespace winsumm {

struct RunConfig {
  std::filesystem::path corpus_dir;
  std::filesystem::path vectors_path;  // optional
  std::filesystem::path output_dir = "winsumm-out";
  std::filesystem::path checkpoint;    // defaults to <output_dir>/model.ckpt
  std::uint64_t seed = 13;

  std::size_t epochs = 50;
  AdaDeltaOptions optimizer;  // lr 0.1, rho 0.95, eps 1e-6, clip 5

  LabelParams labels;  // window 10, rouge1, singleton scoring
  ModelConfig model;   // vocab_size is filled from the corpus
  double budget = 0.2;

  int min_count = 1;
  std::size_t max_sents = kMaxSentences;
  std::size_t max_toks = kMaxTokens;
  std::array<double, 3> split = {10.0, 1.0, 1.0};

  void validate() const;
  std::filesystem::path checkpoint_path() const;

  /// Apply one `key = value` setting. Throws UsageError for unknown keys or
  /// unparseable values.
  void set(std::string_view key, std::string_view value);
  std::vector<std::pair<std::string, std::string>> to_pairs() const;
};

/// Every key accepted by RunConfig::set, in canonical order.
const std::vector<std::string>& run_config_keys();

/// Flat `key = value` lines; `#` starts a comment; blank lines ignored.
RunConfig load_run_config(const std::filesystem::path& path);
void apply_run_config_file(RunConfig& config, const std::filesystem::path& path);

}  // namespace winsumm
